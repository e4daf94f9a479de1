//! Line-based text formats for complexes (with optional strata) and chains.
//!
//! ```text
//! delta-complex v1
//! simplex x 0
//! simplex e 1 faces y x
//! stratum e interior
//! ```
//!
//! ```text
//! chain v1 dim 1
//! term simplex e = 1
//! term t : t x-y@0,1 x = -1/2
//! ```
//!
//! A face token in a chain term is the identifier of a face of the carrier;
//! when that face occurs at several vertex positions of the carrier, the
//! positions are given after `@`.

use std::str::FromStr;

use num::Zero;

use super::{Chain, DeltaComplex, DeltaComplexBuilder, FaceMask, FormalSimplex};
use crate::strat::Stratification;
use crate::{Error, Rational, Result};

/// A parsed complex file.
#[derive(Clone, Debug)]
pub struct ComplexFile {
    pub complex: DeltaComplex,
    /// Present when the file has `stratum` lines.
    pub strata: Option<Stratification>,
}

fn id_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '-')
}

fn stratum_name_ok(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((n + 1, words))
    })
}

pub fn parse_complex(text: &str) -> Result<ComplexFile> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, w)) if w == ["delta-complex", "v1"] => {}
        Some((line, _)) => {
            return Err(Error::Parse {
                line,
                message: "expected header `delta-complex v1`".into(),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty complex file".into(),
            })
        }
    }
    let mut builder = DeltaComplexBuilder::new();
    let mut strata: Vec<(usize, String, String)> = Vec::new();
    for (line, w) in lines {
        let err = |message: String| Error::Parse { line, message };
        match w[0] {
            "simplex" => {
                if w.len() < 3 {
                    return Err(err("expected `simplex <id> <dim> ...`".into()));
                }
                if !id_ok(w[1]) {
                    return Err(err(format!("invalid identifier `{}`", w[1])));
                }
                let d: usize = w[2].parse().map_err(|_| err(format!("invalid dimension `{}`", w[2])))?;
                if d == 0 {
                    if w.len() != 3 {
                        return Err(err("a vertex has no faces".into()));
                    }
                    builder.vertex(w[1]);
                } else {
                    if w.get(3) != Some(&"faces") || w.len() != d + 5 {
                        return Err(err(format!(
                            "a {d}-simplex needs `faces` followed by {} identifiers",
                            d + 1
                        )));
                    }
                    builder.simplex(w[1], w[4..].to_vec());
                }
            }
            "stratum" => {
                if w.len() != 3 || !stratum_name_ok(w[2]) {
                    return Err(err("expected `stratum <simplex-id> <name>`".into()));
                }
                strata.push((line, w[1].to_string(), w[2].to_string()));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let complex = builder.build()?;
    let strata = if strata.is_empty() {
        None
    } else {
        let mut pairs = Vec::with_capacity(strata.len());
        let mut assigned = std::collections::HashSet::new();
        for (line, id, name) in strata {
            let f = complex.lookup(&id).ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown simplex `{id}`"),
            })?;
            if !assigned.insert(f) {
                return Err(Error::Parse {
                    line,
                    message: format!("simplex `{id}` assigned twice"),
                });
            }
            pairs.push((f, name));
        }
        Some(Stratification::from_pairs(&complex, pairs)?)
    };
    Ok(ComplexFile { complex, strata })
}

pub fn write_complex(k: &DeltaComplex, strata: Option<&Stratification>) -> String {
    let mut out = String::from("delta-complex v1\n");
    for f in k.all_simplices() {
        if f.dim == 0 {
            out.push_str(&format!("simplex {} 0\n", k.id(f)));
        } else {
            let faces: Vec<&str> = (0..=f.dim).map(|i| k.id(k.face(f, i))).collect();
            out.push_str(&format!("simplex {} {} faces {}\n", k.id(f), f.dim, faces.join(" ")));
        }
    }
    if let Some(s) = strata {
        for f in k.all_simplices() {
            out.push_str(&format!("stratum {} {}\n", k.id(f), s.name(s.stratum(f))));
        }
    }
    out
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = num::BigInt::from_str(num).ok()?;
    let den = num::BigInt::from_str(den).ok()?;
    (!den.is_zero()).then(|| Rational::new(num, den))
}

pub fn parse_chain(k: &DeltaComplex, text: &str) -> Result<Chain> {
    let mut lines = content_lines(text);
    let dim = match lines.next() {
        Some((line, w)) => {
            if w.len() != 4 || w[0] != "chain" || w[1] != "v1" || w[2] != "dim" {
                return Err(Error::Parse {
                    line,
                    message: "expected header `chain v1 dim <j>`".into(),
                });
            }
            w[3].parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid dimension `{}`", w[3]),
            })?
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty chain file".into(),
            })
        }
    };
    let mut chain = Chain::zero(dim);
    for (line, w) in lines {
        let err = |message: String| Error::Parse { line, message };
        if w[0] != "term" {
            return Err(err(format!("unknown directive `{}`", w[0])));
        }
        let eq = w
            .iter()
            .position(|&t| t == "=")
            .filter(|&p| p + 2 == w.len())
            .ok_or_else(|| err("expected `= <coefficient>` at the end of the term".into()))?;
        let coefficient =
            parse_rational(w[eq + 1]).ok_or_else(|| err(format!("invalid coefficient `{}`", w[eq + 1])))?;
        let body = &w[1..eq];
        let simplex = if body.first() == Some(&"simplex") {
            if body.len() != 2 {
                return Err(err("expected `term simplex <id> = <coefficient>`".into()));
            }
            let f = k
                .lookup(body[1])
                .ok_or_else(|| err(format!("unknown simplex `{}`", body[1])))?;
            FormalSimplex::embed(f)
        } else {
            if body.len() < 2 || body[1] != ":" {
                return Err(err("expected `term <carrier> : <faces> = <coefficient>`".into()));
            }
            let carrier = k
                .lookup(body[0])
                .ok_or_else(|| err(format!("unknown simplex `{}`", body[0])))?;
            let mut masks = Vec::with_capacity(body.len() - 2);
            for token in &body[2..] {
                masks.push(parse_face_token(k, carrier, token).map_err(err)?);
            }
            FormalSimplex::new(k, carrier, masks).map_err(|e| err(e.to_string()))?
        };
        if simplex.dim() != dim {
            return Err(err(format!("term of dimension {} in a {dim}-chain", simplex.dim())));
        }
        chain.add_term(simplex, coefficient);
    }
    Ok(chain)
}

fn parse_face_token(k: &DeltaComplex, carrier: super::FaceRef, token: &str) -> std::result::Result<FaceMask, String> {
    let (id, positions) = match token.split_once('@') {
        Some((id, p)) => (id, Some(p)),
        None => (token, None),
    };
    let target = k.lookup(id).ok_or_else(|| format!("unknown simplex `{id}`"))?;
    let full = FaceMask::full(carrier.dim);
    match positions {
        Some(p) => {
            let mut mask = FaceMask::EMPTY;
            for part in p.split(',') {
                let i: usize = part
                    .parse()
                    .map_err(|_| format!("invalid position list in `{token}`"))?;
                if i > carrier.dim {
                    return Err(format!("position {i} out of range in `{token}`"));
                }
                mask = mask.union(FaceMask::singleton(i));
            }
            if !mask.is_subset(full) || mask.len() != target.dim + 1 || k.face_of(carrier, mask) != target {
                return Err(format!("`{token}` is not a face of `{}`", k.id(carrier)));
            }
            Ok(mask)
        }
        None => match k.face_positions(carrier, target).as_slice() {
            [m] => Ok(*m),
            [] => Err(format!("`{id}` is not a face of `{}`", k.id(carrier))),
            _ => Err(format!(
                "`{id}` occurs several times in `{}`; give positions with `@`",
                k.id(carrier)
            )),
        },
    }
}

pub fn write_chain(k: &DeltaComplex, c: &Chain) -> String {
    let mut out = format!("chain v1 dim {}\n", c.dim());
    for (s, r) in c.iter() {
        if s.is_native() {
            out.push_str(&format!("term simplex {} = {r}\n", k.id(s.carrier())));
            continue;
        }
        let carrier = s.carrier();
        let tokens: Vec<String> = s
            .vertex_masks()
            .iter()
            .map(|&m| {
                let f = k.face_of(carrier, m);
                if k.face_positions(carrier, f).len() == 1 {
                    k.id(f).to_string()
                } else {
                    let p: Vec<String> = m.positions().map(|i| i.to_string()).collect();
                    format!("{}@{}", k.id(f), p.join(","))
                }
            })
            .collect();
        out.push_str(&format!("term {} : {} = {r}\n", k.id(carrier), tokens.join(" ")));
    }
    out
}
