use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigUint, One, Zero};

use crate::{Error, Result};

/// A poset element with an optional label (a stratum of a coarser
/// stratification) and an optional codimension tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub label: Option<String>,
    pub codim: Option<usize>,
}

impl Element {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            label: None,
            codim: None,
        }
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn codim(mut self, codim: usize) -> Self {
        self.codim = Some(codim);
        self
    }
}

/// A finite poset given by generating relations, closed transitively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Element>,
    index: HashMap<String, usize>,
    /// `less[a][b]`: `a < b`.
    less: Vec<Vec<bool>>,
}

/// Outcome of the face-labeling check at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelReport {
    pub vertex: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl Poset {
    /// `relations` are pairs `(lower, upper)`.
    pub fn new<S: AsRef<str>>(elements: Vec<Element>, relations: &[(S, S)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.name.clone(), i).is_some() {
                return Err(Error::DuplicateId(e.name.clone()));
            }
        }
        let n = elements.len();
        let mut less = vec![vec![false; n]; n];
        for (lo, hi) in relations {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(s.to_string()))
            };
            let (a, b) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            if a == b {
                continue;
            }
            less[a][b] = true;
        }
        for m in 0..n {
            let above = less[m].clone();
            for row in less.iter_mut().filter(|row| row[m]) {
                for (cell, &up) in row.iter_mut().zip(&above) {
                    *cell |= up;
                }
            }
        }
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| b != a && less[a][b] && less[b][a]) {
                let (x, y) = if elements[a].name <= elements[b].name {
                    (a, b)
                } else {
                    (b, a)
                };
                return Err(Error::NotAntisymmetric(
                    elements[x].name.clone(),
                    elements[y].name.clone(),
                ));
            }
        }
        Ok(Self { elements, index, less })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Result<&Element> {
        self.position(name).map(|i| &self.elements[i])
    }

    fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.less[self.position(a)?][self.position(b)?])
    }

    /// Strictly increasing chains of `k` elements. With `distinct_labels`,
    /// only chains whose labels are pairwise distinct count; unlabeled
    /// elements never clash.
    pub fn count_chains(&self, k: usize, distinct_labels: bool) -> BigUint {
        if k == 0 {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        let mut used: Vec<&str> = Vec::new();
        for a in 0..self.len() {
            total += self.extend(a, k - 1, distinct_labels, &mut used);
        }
        total
    }

    fn extend<'a>(&'a self, top: usize, remaining: usize, distinct: bool, used: &mut Vec<&'a str>) -> BigUint {
        let label = self.elements[top].label.as_deref();
        if distinct {
            if let Some(l) = label {
                if used.contains(&l) {
                    return BigUint::zero();
                }
                used.push(l);
            }
        }
        let count = if remaining == 0 {
            BigUint::one()
        } else {
            (0..self.len())
                .filter(|&b| self.less[top][b])
                .map(|b| self.extend(b, remaining - 1, distinct, used))
                .sum()
        };
        if distinct && label.is_some() {
            used.pop();
        }
        count
    }

    /// All strictly increasing chains of `k` elements, listed from the
    /// bottom up.
    pub fn chains(&self, k: usize) -> Vec<Vec<&str>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        for a in 0..self.len() {
            self.collect_chains(a, k, &mut current, &mut out);
        }
        out
    }

    fn collect_chains<'a>(&'a self, bottom: usize, k: usize, current: &mut Vec<&'a str>, out: &mut Vec<Vec<&'a str>>) {
        if k == 0 {
            return;
        }
        current.push(&self.elements[bottom].name);
        if current.len() == k {
            out.push(current.clone());
        } else {
            for b in (0..self.len()).filter(|&b| self.less[bottom][b]) {
                self.collect_chains(b, k, current, out);
            }
        }
        current.pop();
    }

    /// Face-labeling check at `vertex`: every element's set of codimension-1
    /// elements above it must have as many members as its codimension, and
    /// elements above `vertex` of equal codimension must have distinct such
    /// sets.
    pub fn faces_label_check(&self, vertex: &str) -> Result<LabelReport> {
        let v = self.position(vertex)?;
        let mut codims = Vec::with_capacity(self.len());
        for e in &self.elements {
            codims.push(e.codim.ok_or_else(|| Error::MissingCodim(e.name.clone()))?);
        }
        let facets: Vec<usize> = (0..self.len()).filter(|&i| codims[i] == 1).collect();
        let label_set = |x: usize| -> BTreeSet<&str> {
            facets
                .iter()
                .filter(|&&f| f == x || self.less[x][f])
                .map(|&f| self.elements[f].name.as_str())
                .collect()
        };
        let mut witnesses = Vec::new();
        let mut seen: BTreeMap<(usize, BTreeSet<&str>), usize> = BTreeMap::new();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.elements[a].name.cmp(&self.elements[b].name));
        for x in order {
            let labels = label_set(x);
            if labels.len() != codims[x] {
                witnesses.push(format!(
                    "{}: codim {} but lies below {} codimension-1 elements",
                    self.elements[x].name,
                    codims[x],
                    labels.len()
                ));
            }
            if x == v || self.less[v][x] {
                if let Some(&y) = seen.get(&(codims[x], labels.clone())) {
                    witnesses.push(format!(
                        "{} and {}: same codimension-1 elements above",
                        self.elements[y].name, self.elements[x].name
                    ));
                } else {
                    seen.insert((codims[x], labels), x);
                }
            }
        }
        Ok(LabelReport {
            vertex: vertex.to_string(),
            passed: witnesses.is_empty(),
            witnesses,
        })
    }
}

fn token_ok(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut header = false;
    let mut elements = Vec::new();
    let mut relations = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| Error::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        if !header {
            if words != ["poset", "v1"] {
                return Err(err("expected header `poset v1`".into()));
            }
            header = true;
            continue;
        }
        match words[0] {
            "elem" => {
                let name = words.get(1).ok_or_else(|| err("missing element name".into()))?;
                if !token_ok(name) {
                    return Err(err(format!("invalid element name `{name}`")));
                }
                let mut e = Element::new(*name);
                let mut rest = words[2..].iter();
                while let Some(&key) = rest.next() {
                    let value = rest.next().ok_or_else(|| err(format!("`{key}` needs a value")))?;
                    match key {
                        "label" if e.label.is_none() => e.label = Some(value.to_string()),
                        "codim" if e.codim.is_none() => {
                            e.codim = Some(
                                value
                                    .parse()
                                    .map_err(|_| err(format!("invalid codimension `{value}`")))?,
                            )
                        }
                        _ => return Err(err(format!("unexpected `{key}`"))),
                    }
                }
                elements.push(e);
            }
            "rel" => {
                if words.len() != 3 {
                    return Err(err("expected `rel <lower> <upper>`".into()));
                }
                relations.push((words[1].to_string(), words[2].to_string()));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !header {
        return Err(Error::Parse {
            line: 1,
            message: "expected header `poset v1`".into(),
        });
    }
    Poset::new(elements, &relations)
}

/// Writes elements in insertion order and the covering relations in
/// lexicographic order.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::from("poset v1\n");
    for e in &p.elements {
        out.push_str("elem ");
        out.push_str(&e.name);
        if let Some(l) = &e.label {
            out.push_str(&format!(" label {l}"));
        }
        if let Some(c) = e.codim {
            out.push_str(&format!(" codim {c}"));
        }
        out.push('\n');
    }
    let n = p.len();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.less[a][b] && !(0..n).any(|m| p.less[a][m] && p.less[m][b]) {
                covers.push((p.elements[a].name.as_str(), p.elements[b].name.as_str()));
            }
        }
    }
    covers.sort();
    for (a, b) in covers {
        out.push_str(&format!("rel {a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> Poset {
        parse_poset(
            "poset v1
             elem D label p codim 0
             elem R label b codim 1
             elem L label c codim 1
             elem N label c codim 2
             elem S label c codim 2
             rel R D
             rel L D
             rel N R
             rel N L
             rel S R
             rel S L",
        )
        .unwrap()
    }

    fn corner() -> Poset {
        let e = |n: &str, c| Element::new(n).codim(c);
        Poset::new(
            vec![e("I", 0), e("X", 1), e("Y", 1), e("O", 2)],
            &[("X", "I"), ("Y", "I"), ("O", "X"), ("O", "Y")],
        )
        .unwrap()
    }

    #[test]
    fn total_order_chains() {
        let p = Poset::new(
            vec![Element::new("a"), Element::new("b"), Element::new("c")],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap();
        assert_eq!(p.count_chains(3, false), BigUint::from(1u32));
        assert_eq!(p.count_chains(1, false), BigUint::from(3u32));
        assert!(p.less("a", "c").unwrap());
    }

    #[test]
    fn corner_and_disk_chains() {
        assert_eq!(corner().count_chains(3, false), BigUint::from(2u32));
        let d = disk();
        assert_eq!(d.count_chains(3, false), BigUint::from(4u32));
        assert_eq!(d.count_chains(3, true), BigUint::from(2u32));
    }

    #[test]
    fn label_checks() {
        assert!(corner().faces_label_check("O").unwrap().passed);
        let d = disk();
        assert!(d.faces_label_check("N").unwrap().passed);
        assert!(d.faces_label_check("S").unwrap().passed);

        // one codimension-1 component meeting the vertex from both sides
        let e = |n: &str, c| Element::new(n).codim(c);
        let merged = Poset::new(vec![e("I", 0), e("X", 1), e("O", 2)], &[("X", "I"), ("O", "X")]).unwrap();
        let r = merged.faces_label_check("O").unwrap();
        assert!(!r.passed);
        assert_eq!(r.witnesses.len(), 1);

        let untagged = Poset::new(vec![Element::new("a")], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(untagged.faces_label_check("a"), Err(Error::MissingCodim("a".into())));
    }

    #[test]
    fn antisymmetry_and_unknowns() {
        let r = Poset::new(vec![Element::new("a"), Element::new("b")], &[("a", "b"), ("b", "a")]);
        assert_eq!(r, Err(Error::NotAntisymmetric("a".into(), "b".into())));
        let r = Poset::new(vec![Element::new("a")], &[("a", "z")]);
        assert_eq!(r, Err(Error::UnknownElement("z".into())));
        assert!(matches!(parse_poset("poset v2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip() {
        let d = disk();
        assert_eq!(parse_poset(&write_poset(&d)).unwrap(), d);
        assert_eq!(
            parse_poset("poset v1\n").unwrap().count_chains(2, false),
            BigUint::zero()
        );
    }
}
