//! Quadratic presentations of path-algebra quotients, rewriting to normal
//! form, Diamond-lemma confluence checks (the Koszulity certificate), graded
//! monomial bases, and quadratic duals.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::field::{FieldSpec, Scalar};
use crate::linalg::SparseMatrix;
use crate::quiver::{
    admissible_cmp, combo_add_term, combo_mul, uniform_endpoints, LinCombo, Path, Quiver,
};
use crate::Error;

/// A quiver with uniform homogeneous length-2 relations, a total arrow order
/// (inducing the length-left-lexicographic admissible order), and an optional
/// second grading by arrow weights.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub relations: Vec<LinCombo>,
    /// arrow_rank[arrow index] = position in the arrow order (smaller = earlier).
    pub arrow_rank: Vec<u32>,
    /// Optional weight per arrow for the second grading.
    pub degree_weights: Option<Vec<i64>>,
}

impl QuadraticPresentation {
    pub fn validate(&self) -> Result<(), Error> {
        if self.arrow_rank.len() != self.quiver.arrows.len() {
            return Err(Error::new("arrow order size mismatch"));
        }
        let mut seen = std::collections::HashSet::new();
        for &r in &self.arrow_rank {
            if !seen.insert(r) {
                return Err(Error::new("arrow order is not total"));
            }
        }
        for rel in &self.relations {
            if rel.is_empty() {
                return Err(Error::new("zero relation"));
            }
            if uniform_endpoints(&self.quiver, rel).is_none() {
                return Err(Error::new("non-uniform relation"));
            }
            if rel.keys().any(|p| p.len() != 2) {
                return Err(Error::new("relation not homogeneous of length 2"));
            }
        }
        if let Some(w) = &self.degree_weights {
            if w.len() != self.quiver.arrows.len() {
                return Err(Error::new("degree weight size mismatch"));
            }
            for rel in &self.relations {
                let degrees: Vec<i64> = rel.keys().map(|p| self.path_degree(p)).collect();
                if degrees.windows(2).any(|d| d[0] != d[1]) {
                    return Err(Error::new("relation not degree-homogeneous"));
                }
            }
        }
        Ok(())
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        match &self.degree_weights {
            None => p.len() as i64,
            Some(w) => p.arrows.iter().map(|&a| w[a]).sum(),
        }
    }

    fn cmp_paths(&self, a: &Path, b: &Path) -> std::cmp::Ordering {
        admissible_cmp(a, b, &self.arrow_rank)
    }

    /// Largest monomial of a combination under the admissible order.
    pub fn leading_monomial<'a>(&self, x: &'a LinCombo) -> Option<&'a Path> {
        x.keys().max_by(|a, b| self.cmp_paths(a, b))
    }

    /// The presentation on the opposite quiver with all relations reversed.
    pub fn opposite(&self) -> QuadraticPresentation {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|(p, c)| (reverse_path(&self.quiver, p), c.clone()))
                    .collect()
            })
            .collect();
        QuadraticPresentation {
            quiver,
            field: self.field,
            relations,
            arrow_rank: self.arrow_rank.clone(),
            degree_weights: self.degree_weights.clone(),
        }
    }
}

/// The reversal of a path, as a path of the opposite quiver (arrow indices
/// are shared between a quiver and its opposite).
pub fn reverse_path(q: &Quiver, p: &Path) -> Path {
    Path {
        base: q.path_target(p),
        arrows: p.arrows.iter().rev().copied().collect(),
    }
}

/// Rewriting rules keyed by leading length-2 words; the right side is a
/// combination of strictly smaller length-2 words (possibly zero).
#[derive(Clone, Debug, Default)]
pub struct ReductionSystem {
    pub rules: BTreeMap<(usize, usize), LinCombo>,
}

impl ReductionSystem {
    fn key_of(p: &Path) -> (usize, usize) {
        debug_assert_eq!(p.len(), 2);
        (p.arrows[0], p.arrows[1])
    }

    /// First reducible position in `p`, scanning left to right.
    pub fn first_reducible(&self, p: &Path) -> Option<usize> {
        p.arrows
            .windows(2)
            .position(|w| self.rules.contains_key(&(w[0], w[1])))
    }

    /// All reducible positions in `p`.
    pub fn reducible_positions(&self, p: &Path) -> Vec<usize> {
        p.arrows
            .windows(2)
            .enumerate()
            .filter(|(_, w)| self.rules.contains_key(&(w[0], w[1])))
            .map(|(k, _)| k)
            .collect()
    }

    /// Apply the rule at position `k` of `p` once.
    pub fn rewrite_at(&self, p: &Path, k: usize) -> LinCombo {
        let key = (p.arrows[k], p.arrows[k + 1]);
        let rhs = &self.rules[&key];
        let mut out = LinCombo::new();
        for (r, c) in rhs {
            let mut arrows = p.arrows[..k].to_vec();
            arrows.extend_from_slice(&r.arrows);
            arrows.extend_from_slice(&p.arrows[k + 2..]);
            out.insert(
                Path {
                    base: p.base,
                    arrows,
                },
                c.clone(),
            );
        }
        out
    }
}

/// Solve each relation for its leading monomial and inter-reduce. Errors when
/// two relations share a leading monomial without being proportional
/// (completion is out of scope; this is reported, not repaired).
pub fn build_reduction_system(p: &QuadraticPresentation) -> Result<ReductionSystem, Error> {
    p.validate()?;
    let mut rules: BTreeMap<(usize, usize), LinCombo> = BTreeMap::new();
    for rel in &p.relations {
        let lead = p.leading_monomial(rel).unwrap().clone();
        let key = ReductionSystem::key_of(&lead);
        let coeff = rel[&lead].clone();
        let inv = coeff.inv()?;
        let mut rhs = LinCombo::new();
        for (mono, c) in rel {
            if *mono == lead {
                continue;
            }
            rhs.insert(mono.clone(), c.mul(&inv).neg());
        }
        if let Some(existing) = rules.get(&key) {
            if *existing != rhs {
                return Err(Error::new(format!(
                    "relations share leading monomial {} but are not proportional",
                    p.quiver.path_to_string(&lead)
                )));
            }
            continue;
        }
        rules.insert(key, rhs);
    }
    // inter-reduce: right sides are length-2 words, so a single pass per rule
    // against the final key set suffices, iterated to a fixpoint
    loop {
        let mut changed = false;
        let keys: Vec<(usize, usize)> = rules.keys().copied().collect();
        for key in keys {
            let rhs = rules[&key].clone();
            let mut next = LinCombo::new();
            let mut touched = false;
            for (mono, c) in &rhs {
                let mk = ReductionSystem::key_of(mono);
                if mk != key && rules.contains_key(&mk) {
                    touched = true;
                    for (sub, sc) in &rules[&mk] {
                        combo_add_term(&mut next, sub.clone(), &c.mul(sc));
                    }
                } else {
                    combo_add_term(&mut next, mono.clone(), c);
                }
            }
            if touched && next != rhs {
                rules.insert(key, next);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(ReductionSystem { rules })
}

/// Deterministic normal form: repeatedly rewrite the leftmost reducible
/// factor of each monomial.
pub fn normal_form(rs: &ReductionSystem, x: &LinCombo) -> LinCombo {
    normal_form_with(rs, x, |positions| positions[0])
}

/// Normal form with a caller-chosen reduction strategy: `choose` picks one of
/// the reducible positions of the current monomial. Under a confluent system
/// every strategy returns the same result.
pub fn normal_form_with<F>(rs: &ReductionSystem, x: &LinCombo, mut choose: F) -> LinCombo
where
    F: FnMut(&[usize]) -> usize,
{
    let mut work: Vec<(Path, Scalar)> = x.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
    let mut out = LinCombo::new();
    while let Some((p, c)) = work.pop() {
        let positions = rs.reducible_positions(&p);
        if positions.is_empty() {
            combo_add_term(&mut out, p, &c);
            continue;
        }
        let k = choose(&positions);
        for (np, nc) in rs.rewrite_at(&p, k) {
            work.push((np, c.mul(&nc)));
        }
    }
    out
}

/// One unresolved length-3 overlap: the ambiguous word and the two distinct
/// normal forms it reduces to.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub word: Path,
    pub left_first: LinCombo,
    pub right_first: LinCombo,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub unresolved: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Diamond-lemma check: every word xyz with keys (x,y) and (y,z) must reduce
/// to the same normal form whichever key is applied first.
pub fn confluence_check(q: &Quiver, rs: &ReductionSystem) -> ConfluenceReport {
    let mut report = ConfluenceReport::default();
    for &(x, y) in rs.rules.keys() {
        for &(y2, z) in rs.rules.keys() {
            if y != y2 {
                continue;
            }
            let word = Path {
                base: q.arrows[x].src,
                arrows: vec![x, y, z],
            };
            let left = normal_form(rs, &rs.rewrite_at(&word, 0));
            let right = normal_form(rs, &rs.rewrite_at(&word, 1));
            if left != right {
                report.unresolved.push(Overlap {
                    word,
                    left_first: left,
                    right_first: right,
                });
            }
        }
    }
    report
}

/// A presentation together with its built reduction system and confluence
/// certificate, plus a memoized graded monomial basis.
pub struct Algebra {
    pub pres: QuadraticPresentation,
    pub rs: ReductionSystem,
    pub certificate: ConfluenceReport,
    basis_cache: Mutex<HashMap<usize, Vec<Path>>>,
}

impl Algebra {
    pub fn new(pres: QuadraticPresentation) -> Result<Algebra, Error> {
        let rs = build_reduction_system(&pres)?;
        let certificate = confluence_check(&pres.quiver, &rs);
        Ok(Algebra {
            pres,
            rs,
            certificate,
            basis_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.ok()
    }

    pub fn field(&self) -> FieldSpec {
        self.pres.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }

    pub fn normal_form(&self, x: &LinCombo) -> LinCombo {
        normal_form(&self.rs, x)
    }

    /// Product followed by reduction.
    pub fn mul(&self, a: &LinCombo, b: &LinCombo) -> LinCombo {
        self.normal_form(&combo_mul(&self.pres.quiver, a, b))
    }

    /// All normal monomials of the given length, sorted by the admissible
    /// order (then by base vertex for trivial paths). Requires a confluence
    /// certificate, otherwise counts would not be dimensions.
    pub fn monomial_basis(&self, length: usize) -> Result<Vec<Path>, Error> {
        if !self.is_certified() {
            return Err(Error::new(
                "monomial basis requested but confluence is not certified",
            ));
        }
        if let Some(b) = self.basis_cache.lock().unwrap().get(&length) {
            return Ok(b.clone());
        }
        let q = &self.pres.quiver;
        let mut out: Vec<Path> = Vec::new();
        if length == 0 {
            out = (0..q.vertices.len()).map(|v| q.trivial_path(v)).collect();
        } else {
            let mut stack: Vec<usize> = Vec::new();
            self.basis_rec(length, &mut stack, &mut out);
            out.sort_by(|a, b| {
                admissible_cmp(a, b, &self.pres.arrow_rank).then_with(|| a.base.cmp(&b.base))
            });
        }
        self.basis_cache
            .lock()
            .unwrap()
            .insert(length, out.clone());
        Ok(out)
    }

    fn basis_rec(&self, length: usize, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        if stack.len() == length {
            out.push(Path {
                base: self.pres.quiver.arrows[stack[0]].src,
                arrows: stack.clone(),
            });
            return;
        }
        for idx in 0..self.pres.quiver.arrows.len() {
            if let Some(&last) = stack.last() {
                if self.pres.quiver.arrows[idx].src != self.pres.quiver.arrows[last].tgt {
                    continue;
                }
                if self.rs.rules.contains_key(&(last, idx)) {
                    continue;
                }
            }
            stack.push(idx);
            self.basis_rec(length, stack, out);
            stack.pop();
        }
    }

    /// Graded dimension at one length.
    pub fn dimension(&self, length: usize) -> Result<usize, Error> {
        Ok(self.monomial_basis(length)?.len())
    }

    /// Total dimension, when finite: sums graded dimensions until a zero
    /// piece appears (valid for monomial-bounded quotients); gives up at the
    /// cap.
    pub fn total_dimension(&self, cap: usize) -> Result<Option<usize>, Error> {
        let mut total = 0;
        for l in 0..=cap {
            let d = self.dimension(l)?;
            if d == 0 {
                return Ok(Some(total));
            }
            total += d;
        }
        Ok(None)
    }
}

/// The quadratic dual: on the opposite quiver, relations spanning the
/// orthogonal complement of the input relation span under the pairing
/// <(xy)^o, x'y'> = delta_{x,x'} delta_{y,y'}, computed per endpoint block by
/// exact kernel computation.
pub fn quadratic_dual(p: &QuadraticPresentation) -> Result<QuadraticPresentation, Error> {
    p.validate()?;
    let q = &p.quiver;
    let op = q.opposite();
    let mut relations_by_block: BTreeMap<(usize, usize), Vec<&LinCombo>> = BTreeMap::new();
    for rel in &p.relations {
        let e = uniform_endpoints(q, rel).unwrap();
        relations_by_block.entry(e).or_default().push(rel);
    }
    let mut dual_relations = Vec::new();
    for u in 0..q.vertices.len() {
        for v in 0..q.vertices.len() {
            let paths = q.enumerate_paths(2, Some(u), Some(v));
            if paths.is_empty() {
                continue;
            }
            let index: BTreeMap<&Path, usize> =
                paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let rels = relations_by_block.get(&(u, v)).cloned().unwrap_or_default();
            let mut m = SparseMatrix::zero(rels.len(), paths.len(), p.field);
            for (r, rel) in rels.iter().enumerate() {
                for (mono, c) in rel.iter() {
                    m.set(r, index[mono], c.clone());
                }
            }
            for vec in m.kernel_basis() {
                let mut rel = LinCombo::new();
                for (i, c) in vec.into_iter().enumerate() {
                    if !c.is_zero() {
                        rel.insert(reverse_path(q, &paths[i]), c);
                    }
                }
                dual_relations.push(rel);
            }
        }
    }
    Ok(QuadraticPresentation {
        quiver: op,
        field: p.field,
        relations: dual_relations,
        arrow_rank: p.arrow_rank.clone(),
        degree_weights: None,
    })
}

/// Whether two presentations on name-identical quivers have equal relation
/// spans (rank of each span equals the rank of the union).
pub fn relation_span_equal(
    a: &QuadraticPresentation,
    b: &QuadraticPresentation,
) -> Result<bool, Error> {
    if a.quiver.vertices != b.quiver.vertices {
        return Err(Error::new("vertex sets differ"));
    }
    let names_a: Vec<&str> = a.quiver.arrows.iter().map(|x| x.name.as_str()).collect();
    let names_b: Vec<&str> = b.quiver.arrows.iter().map(|x| x.name.as_str()).collect();
    // map b's arrow indices onto a's
    let mut b_to_a = Vec::with_capacity(names_b.len());
    for n in &names_b {
        match names_a.iter().position(|m| m == n) {
            Some(i) => b_to_a.push(i),
            None => return Err(Error::new(format!("arrow `{n}` missing from first quiver"))),
        }
    }
    let paths = {
        let mut all = Vec::new();
        for u in 0..a.quiver.vertices.len() {
            for v in 0..a.quiver.vertices.len() {
                all.extend(a.quiver.enumerate_paths(2, Some(u), Some(v)));
            }
        }
        all
    };
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let fill = |rels: &[LinCombo], remap: Option<&[usize]>| -> Result<SparseMatrix, Error> {
        let mut m = SparseMatrix::zero(rels.len(), paths.len(), a.field);
        for (r, rel) in rels.iter().enumerate() {
            for (mono, c) in rel {
                let mono = match remap {
                    None => mono.clone(),
                    Some(map) => {
                        let arrows: Vec<usize> = mono.arrows.iter().map(|&x| map[x]).collect();
                        Path {
                            base: a.quiver.arrows[arrows[0]].src,
                            arrows,
                        }
                    }
                };
                let idx = index
                    .get(&mono)
                    .ok_or_else(|| Error::new("relation monomial not a path of the quiver"))?;
                m.set(r, *idx, c.clone());
            }
        }
        Ok(m)
    };
    let ma = fill(&a.relations, None)?;
    let mb = fill(&b.relations, Some(&b_to_a))?;
    let ra = ma.rank();
    let rb = mb.rank();
    Ok(ra == rb && ma.vstack(&mb).rank() == ra)
}

// ---- presentation file format ----

impl QuadraticPresentation {
    /// Quiver block, `field:` line, `rel:` lines, `order:` line, optional
    /// `degree:` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field: {}\n", self.field));
        out.push_str(&self.quiver.to_text());
        for rel in &self.relations {
            out.push_str(&format!("rel: {}\n", self.quiver.combo_to_string(rel)));
        }
        let mut by_rank: Vec<usize> = (0..self.quiver.arrows.len()).collect();
        by_rank.sort_by_key(|&i| self.arrow_rank[i]);
        out.push_str("order: ");
        out.push_str(
            &by_rank
                .iter()
                .map(|&i| self.quiver.arrows[i].name.clone())
                .collect::<Vec<_>>()
                .join(" < "),
        );
        out.push('\n');
        if let Some(w) = &self.degree_weights {
            for (i, arrow) in self.quiver.arrows.iter().enumerate() {
                out.push_str(&format!("degree: {}={}\n", arrow.name, w[i]));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<QuadraticPresentation, Error> {
        let mut field = None;
        let mut quiver_lines = String::new();
        let mut rel_lines = Vec::new();
        let mut order_line = None;
        let mut degree_lines = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("field:") {
                field = Some(FieldSpec::parse(rest)?);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                rel_lines.push(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("order:") {
                order_line = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("degree:") {
                degree_lines.push(rest.trim().to_string());
            } else {
                quiver_lines.push_str(line);
                quiver_lines.push('\n');
            }
        }
        let field = field.ok_or_else(|| Error::new("missing field: line"))?;
        let quiver = Quiver::from_text(&quiver_lines)?;
        let relations = rel_lines
            .iter()
            .map(|l| parse_combo(&quiver, field, l))
            .collect::<Result<Vec<_>, _>>()?;
        let arrow_rank = match order_line {
            None => (0..quiver.arrows.len() as u32).collect(),
            Some(line) => {
                let mut rank = vec![u32::MAX; quiver.arrows.len()];
                for (pos, name) in line.split('<').map(str::trim).enumerate() {
                    let idx = quiver
                        .arrow_index(name)
                        .ok_or_else(|| Error::new(format!("unknown arrow `{name}` in order")))?;
                    rank[idx] = pos as u32;
                }
                if rank.contains(&u32::MAX) {
                    return Err(Error::new("order line does not cover all arrows"));
                }
                rank
            }
        };
        let degree_weights = if degree_lines.is_empty() {
            None
        } else {
            let mut w = vec![1i64; quiver.arrows.len()];
            for line in degree_lines {
                let (name, val) = line
                    .split_once('=')
                    .ok_or_else(|| Error::new("bad degree line"))?;
                let idx = quiver
                    .arrow_index(name.trim())
                    .ok_or_else(|| Error::new(format!("unknown arrow `{name}` in degree")))?;
                w[idx] = val
                    .trim()
                    .parse()
                    .map_err(|_| Error::new("bad degree value"))?;
            }
            Some(w)
        };
        let pres = QuadraticPresentation {
            quiver,
            field,
            relations,
            arrow_rank,
            degree_weights,
        };
        pres.validate()?;
        Ok(pres)
    }
}

/// Parse a linear combination like `a0*b0 + (1+t)*b1*a1` against a quiver
/// and field. Factors that are arrow names (or `e_<vertex>`) compose as a
/// path; all other factors are scalar expressions.
pub fn parse_combo(q: &Quiver, field: FieldSpec, text: &str) -> Result<LinCombo, Error> {
    let mut combo = LinCombo::new();
    for (sign, term) in split_top_level_terms(text)? {
        let mut coeff = if sign { field.from_i64(-1) } else { field.one() };
        let mut path: Option<Path> = None;
        for factor in split_top_level(term, '*') {
            let factor = factor.trim();
            let stripped = factor
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .unwrap_or(factor);
            if let Some(idx) = q.arrow_index(stripped) {
                let ap = q.arrow_path(idx);
                path = Some(match path {
                    None => ap,
                    Some(prev) => q
                        .compose(&prev, &ap)
                        .ok_or_else(|| Error::new(format!("non-composable path in `{term}`")))?,
                });
            } else if let Some(v) = stripped.strip_prefix("e_").and_then(|s| q.vertex_index(s)) {
                let tp = q.trivial_path(v);
                path = Some(match path {
                    None => tp,
                    Some(prev) => q
                        .compose(&prev, &tp)
                        .ok_or_else(|| Error::new(format!("non-composable path in `{term}`")))?,
                });
            } else {
                coeff = coeff.mul(&field.parse_scalar(factor)?);
            }
        }
        let path = path.ok_or_else(|| Error::new(format!("term `{term}` has no path factor")))?;
        combo_add_term(&mut combo, path, &coeff);
    }
    Ok(combo)
}

/// Split on a separator at parenthesis depth 0.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Split into (is_negated, term) pairs on top-level + and -.
fn split_top_level_terms(text: &str) -> Result<Vec<(bool, &str)>, Error> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut negated = false;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' | '-' if depth == 0 && i > start => {
                let term = text[start..i].trim();
                if !term.is_empty() {
                    out.push((negated, term));
                }
                negated = c == '-';
                start = i + 1;
            }
            '-' if depth == 0 && i == start => {
                negated = !negated;
                start = i + 1;
            }
            _ => {}
        }
    }
    let term = text[start..].trim();
    if term.is_empty() {
        return Err(Error::new("empty term in combination"));
    }
    out.push((negated, term));
    Ok(out)
}
