//! Quivers, paths with left-to-right composition, linear combinations of
//! paths, and parallel-pair enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Scalar;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite quiver. Vertices and arrows are referred to by index; names are
/// for presentation and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<Quiver, Error> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::new(format!("duplicate vertex label `{v}`")));
            }
        }
        let mut arrow_seen = std::collections::HashSet::new();
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(name, src, tgt)| Arrow { name, src, tgt })
            .collect();
        for a in &arrows {
            if a.src >= vertices.len() || a.tgt >= vertices.len() {
                return Err(Error::new(format!("arrow `{}` has undeclared endpoint", a.name)));
            }
            if !arrow_seen.insert(a.name.clone()) {
                return Err(Error::new(format!("duplicate arrow label `{}`", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn trivial_path(&self, vertex: usize) -> Path {
        assert!(vertex < self.vertices.len());
        Path {
            base: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn arrow_path(&self, arrow: usize) -> Path {
        Path {
            base: self.arrows[arrow].src,
            arrows: vec![arrow],
        }
    }

    pub fn path_source(&self, p: &Path) -> usize {
        p.base
    }

    pub fn path_target(&self, p: &Path) -> usize {
        match p.arrows.last() {
            None => p.base,
            Some(&a) => self.arrows[a].tgt,
        }
    }

    /// Left-to-right concatenation; `None` when the endpoints do not match.
    pub fn compose(&self, p: &Path, r: &Path) -> Option<Path> {
        if self.path_target(p) != self.path_source(r) {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&r.arrows);
        Some(Path {
            base: p.base,
            arrows,
        })
    }

    /// All paths of exactly `length`, optionally filtered by endpoints, in
    /// deterministic order (lexicographic by arrow index).
    pub fn enumerate_paths(
        &self,
        length: usize,
        source: Option<usize>,
        target: Option<usize>,
    ) -> Vec<Path> {
        let mut out = Vec::new();
        if length == 0 {
            for v in 0..self.vertices.len() {
                if source.is_some_and(|s| s != v) || target.is_some_and(|t| t != v) {
                    continue;
                }
                out.push(self.trivial_path(v));
            }
            return out;
        }
        let mut stack: Vec<usize> = Vec::new();
        self.enumerate_rec(length, source, target, &mut stack, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        length: usize,
        source: Option<usize>,
        target: Option<usize>,
        stack: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) {
        if stack.len() == length {
            let base = self.arrows[stack[0]].src;
            out.push(Path {
                base,
                arrows: stack.clone(),
            });
            return;
        }
        let at = stack.last().map(|&a| self.arrows[a].tgt);
        for (idx, arrow) in self.arrows.iter().enumerate() {
            if let Some(v) = at {
                if arrow.src != v {
                    continue;
                }
            } else if source.is_some_and(|s| s != arrow.src) {
                continue;
            }
            if stack.len() + 1 == length && target.is_some_and(|t| t != arrow.tgt) {
                continue;
            }
            stack.push(idx);
            self.enumerate_rec(length, source, target, stack, out);
            stack.pop();
        }
    }

    /// The opposite quiver: arrows reversed, names toggled with a `^o`
    /// suffix so that taking the opposite twice restores the original names.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: match a.name.strip_suffix("^o") {
                        Some(base) => base.to_string(),
                        None => format!("{}^o", a.name),
                    },
                    src: a.tgt,
                    tgt: a.src,
                })
                .collect(),
        }
    }

    pub fn path_to_string(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.base])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn combo_to_string(&self, x: &LinCombo) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.iter()
            .map(|(p, c)| {
                let cs = c.to_string();
                let needs_parens = cs.contains('+') || cs.contains(' ') || cs[1..].contains('-');
                if c.is_one() {
                    self.path_to_string(p)
                } else if needs_parens {
                    format!("({})*{}", cs, self.path_to_string(p))
                } else {
                    format!("{}*{}", cs, self.path_to_string(p))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// One line per vertex, then one line per arrow "name: src -> tgt".
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(v);
            out.push('\n');
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "{}: {} -> {}\n",
                a.name, self.vertices[a.src], self.vertices[a.tgt]
            ));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Quiver, Error> {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut arrow_lines = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.contains(':') {
                arrow_lines.push(line.to_string());
            } else {
                vertices.push(line.to_string());
            }
        }
        let find = |label: &str, vertices: &[String]| -> Result<usize, Error> {
            vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::new(format!("unknown vertex `{label}`")))
        };
        for line in arrow_lines {
            let (name, rest) = line.split_once(':').unwrap();
            let (src, tgt) = rest
                .split_once("->")
                .ok_or_else(|| Error::new(format!("bad arrow line `{line}`")))?;
            arrows.push((
                name.trim().to_string(),
                find(src.trim(), &vertices)?,
                find(tgt.trim(), &vertices)?,
            ));
        }
        Quiver::new(vertices, arrows)
    }
}

/// A path: a base vertex for length 0, or a left-to-right composable arrow
/// sequence. Ordering is by length, then lexicographic by arrow index, which
/// serves as a stable map key; admissible comparisons under a presentation's
/// arrow order live in `admissible_cmp`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub base: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Length-then-left-lexicographic comparison of paths of a common quiver
/// under an explicit arrow ranking (`rank[arrow index]`). Trivial paths
/// compare by vertex index.
pub fn admissible_cmp(a: &Path, b: &Path, rank: &[u32]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| {
            for (x, y) in a.arrows.iter().zip(&b.arrows) {
                let ord = rank[*x].cmp(&rank[*y]);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
        .then_with(|| a.base.cmp(&b.base))
}

/// A finite linear combination of paths; no zero coefficients stored.
pub type LinCombo = BTreeMap<Path, Scalar>;

pub fn combo_add_term(combo: &mut LinCombo, path: Path, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match combo.remove(&path) {
        None => {
            combo.insert(path, coeff.clone());
        }
        Some(old) => {
            let sum = old.add(coeff);
            if !sum.is_zero() {
                combo.insert(path, sum);
            }
        }
    }
}

pub fn combo_scale(combo: &LinCombo, factor: &Scalar) -> LinCombo {
    if factor.is_zero() {
        return LinCombo::new();
    }
    combo
        .iter()
        .map(|(p, c)| (p.clone(), c.mul(factor)))
        .collect()
}

pub fn combo_add(a: &LinCombo, b: &LinCombo) -> LinCombo {
    let mut out = a.clone();
    for (p, c) in b {
        combo_add_term(&mut out, p.clone(), c);
    }
    out
}

pub fn combo_sub(a: &LinCombo, b: &LinCombo) -> LinCombo {
    let mut out = a.clone();
    for (p, c) in b {
        combo_add_term(&mut out, p.clone(), &c.neg());
    }
    out
}

/// Product of two combinations in the path algebra (non-composable products
/// drop out).
pub fn combo_mul(q: &Quiver, a: &LinCombo, b: &LinCombo) -> LinCombo {
    let mut out = LinCombo::new();
    for (p1, c1) in a {
        for (p2, c2) in b {
            if let Some(p) = q.compose(p1, p2) {
                combo_add_term(&mut out, p, &c1.mul(c2));
            }
        }
    }
    out
}

/// Source and target shared by every path of a combination, when they exist.
pub fn uniform_endpoints(q: &Quiver, x: &LinCombo) -> Option<(usize, usize)> {
    let mut endpoints = None;
    for p in x.keys() {
        let e = (q.path_source(p), q.path_target(p));
        match endpoints {
            None => endpoints = Some(e),
            Some(prev) if prev != e => return None,
            _ => {}
        }
    }
    endpoints
}

/// Indices of pairs (i, j) with X[i] and Y[j] parallel (same source, same
/// target). All inputs must be uniform.
pub fn parallel_pairs(
    q: &Quiver,
    xs: &[LinCombo],
    ys: &[LinCombo],
) -> Result<Vec<(usize, usize)>, Error> {
    let endpoints = |combos: &[LinCombo]| -> Result<Vec<(usize, usize)>, Error> {
        combos
            .iter()
            .map(|c| {
                uniform_endpoints(q, c).ok_or_else(|| Error::new("non-uniform element in parallel_pairs"))
            })
            .collect()
    };
    let ex = endpoints(xs)?;
    let ey = endpoints(ys)?;
    let mut out = Vec::new();
    for (i, a) in ex.iter().enumerate() {
        for (j, b) in ey.iter().enumerate() {
            if a == b {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.name, self.src, self.tgt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    /// Two vertices 0, 1 with arrows a: 0 -> 1 and b: 1 -> 0.
    fn two_cycle() -> Quiver {
        Quiver::new(
            vec!["0".into(), "1".into()],
            vec![("a".into(), 0, 1), ("b".into(), 1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn compose_basics() {
        let q = two_cycle();
        let a = q.arrow_path(0);
        let b = q.arrow_path(1);
        let e0 = q.trivial_path(0);
        assert_eq!(q.compose(&e0, &a), Some(a.clone()));
        assert_eq!(q.compose(&a, &a), None);
        let ab = q.compose(&a, &b).unwrap();
        assert_eq!(q.path_source(&ab), 0);
        assert_eq!(q.path_target(&ab), 0);
        // associativity where defined
        let abab1 = q.compose(&q.compose(&ab, &a).unwrap(), &b).unwrap();
        let abab2 = q.compose(&ab, &ab).unwrap();
        assert_eq!(abab1, abab2);
    }

    #[test]
    fn enumerate_counts_match_adjacency_powers() {
        let q = two_cycle();
        assert_eq!(q.enumerate_paths(0, None, None).len(), 2);
        assert_eq!(q.enumerate_paths(1, None, None).len(), 2);
        // adjacency matrix is [[0,1],[1,0]]; its cube has entry (0,1) = 1
        assert_eq!(q.enumerate_paths(3, Some(0), Some(1)).len(), 1);
        assert_eq!(q.enumerate_paths(4, Some(0), Some(0)).len(), 1);
    }

    #[test]
    fn opposite_is_involution_on_names() {
        let q = two_cycle();
        let op = q.opposite();
        assert_eq!(op.arrows[0].name, "a^o");
        assert_eq!(op.arrows[0].src, 1);
        assert_eq!(op.opposite(), q);
    }

    #[test]
    fn text_round_trip() {
        let q = two_cycle();
        let again = Quiver::from_text(&q.to_text()).unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn parallel_pairs_on_loops() {
        let q = two_cycle();
        let one = FieldSpec::Rationals.one();
        let ab: LinCombo = [(q.compose(&q.arrow_path(0), &q.arrow_path(1)).unwrap(), one.clone())]
            .into_iter()
            .collect();
        let e0: LinCombo = [(q.trivial_path(0), one.clone())].into_iter().collect();
        let e1: LinCombo = [(q.trivial_path(1), one)].into_iter().collect();
        let pairs = parallel_pairs(&q, &[ab.clone()], &[e0, e1, ab]).unwrap();
        assert_eq!(pairs, vec![(0, 0), (0, 2)]);
    }

    #[test]
    fn admissible_order_length_first() {
        let q = two_cycle();
        let a = q.arrow_path(0);
        let ab = q.compose(&a, &q.arrow_path(1)).unwrap();
        let rank = vec![0, 1];
        assert_eq!(admissible_cmp(&a, &ab, &rank), std::cmp::Ordering::Less);
        // with reversed rank, b < a as words of equal length
        let b = q.arrow_path(1);
        let rev = vec![1, 0];
        assert_eq!(admissible_cmp(&b, &a, &rev), std::cmp::Ordering::Less);
    }
}
