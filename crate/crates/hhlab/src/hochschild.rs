//! The Hochschild cochain complex of the torus algebra, transported to the
//! parallel-path model: induced and closed-form differentials, cohomology
//! dimensions, and cup products of degree-one classes via solved liftings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::field::Scalar;
use crate::linalg::SparseMatrix;
use crate::quiver::{admissible_cmp, LinCombo, Path};
use crate::resolution::{GenLabel, Resolution, TensorElement};
use crate::Error;

pub struct Hochschild<'a> {
    pub res: &'a Resolution<'a>,
}

/// A cochain in degree l: coordinates over `cochain_basis(l)`.
pub type Cochain = Vec<Scalar>;

impl<'a> Hochschild<'a> {
    pub fn new(res: &'a Resolution<'a>) -> Hochschild<'a> {
        Hochschild { res }
    }

    fn all_monomials(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for len in 0.. {
            let ms = self.res.alg.monomial_basis(len).unwrap();
            if ms.is_empty() {
                break;
            }
            out.extend(ms);
        }
        out
    }

    /// Basis of the cochain space in degree l: pairs (generator, parallel
    /// normal monomial), ordered by p then by the monomial order.
    pub fn cochain_basis(&self, l: usize) -> Vec<(GenLabel, Path)> {
        let q = self.res.alg.quiver();
        let rank = &self.res.alg.pres.arrow_rank;
        let monomials = self.all_monomials();
        let mut out = Vec::new();
        for g in self.res.labels(l) {
            let src = g.i * self.res.fp.m + g.j;
            let tgt = {
                let i = (g.i + g.p) % self.res.fp.n;
                let j = (g.j + l - g.p) % self.res.fp.m;
                i * self.res.fp.m + j
            };
            for x in &monomials {
                if q.path_source(x) == src && q.path_target(x) == tgt {
                    out.push((g, x.clone()));
                }
            }
        }
        out.sort_by(|(g1, x1), (g2, x2)| match g1.p.cmp(&g2.p) {
            Ordering::Equal => admissible_cmp(x1, x2, rank),
            o => o,
        });
        out
    }

    /// The matrix of the induced differential M^{l-1} -> M^l, obtained by
    /// dualizing the resolution differential d_l against the parallel-path
    /// pairing.
    pub fn delta_matrix(&self, l: usize) -> SparseMatrix {
        let source = self.cochain_basis(l - 1);
        let target = self.cochain_basis(l);
        let index: BTreeMap<&(GenLabel, Path), usize> =
            target.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let q = self.res.alg.quiver();
        let one = self.res.fp.field.one();
        let mut m = SparseMatrix::zero(target.len(), source.len(), self.res.fp.field);
        for (col, (g, x)) in source.iter().enumerate() {
            for tgt_label in self.res.labels(l) {
                let d = self.res.differential(
                    l,
                    tgt_label.p as i64,
                    tgt_label.i as i64,
                    tgt_label.j as i64,
                );
                for ((left, g2, right), c) in d {
                    if g2 != *g {
                        continue;
                    }
                    let full = q.compose(&q.compose(&left, x).unwrap(), &right).unwrap();
                    let reduced = self
                        .res
                        .alg
                        .normal_form(&[(full, one.clone())].into_iter().collect());
                    for (z, lam) in reduced {
                        m.add_to(index[&(tgt_label, z)], col, &c.mul(&lam));
                    }
                }
            }
        }
        m
    }

    /// The closed-form differential formula, entered literally.
    pub fn delta_closed_form(&self, l: usize) -> SparseMatrix {
        let source = self.cochain_basis(l - 1);
        let target = self.cochain_basis(l);
        let index: BTreeMap<&(GenLabel, Path), usize> =
            target.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let fp = self.res.fp;
        let q = self.res.alg.quiver();
        let one = fp.field.one();
        let sign = if l % 2 == 0 { one.clone() } else { one.neg() };
        let arrow_a = |i: i64, j: i64| -> Path {
            let idx = i.rem_euclid(fp.n as i64) as usize * fp.m + j.rem_euclid(fp.m as i64) as usize;
            q.arrow_path(idx)
        };
        let arrow_b = |i: i64, j: i64| -> Path {
            let idx = fp.m * fp.n
                + i.rem_euclid(fp.n as i64) as usize * fp.m
                + j.rem_euclid(fp.m as i64) as usize;
            q.arrow_path(idx)
        };
        let label = |p: i64, i: i64, j: i64| -> GenLabel {
            GenLabel {
                l,
                p: p as usize,
                i: i.rem_euclid(fp.n as i64) as usize,
                j: j.rem_euclid(fp.m as i64) as usize,
            }
        };
        let q_row = |i: i64, j: i64, count: i64| -> Scalar {
            (0..count).fold(fp.field.one(), |acc, k| acc.mul(fp.q2(i, j + k)))
        };
        let q_col = |i: i64, j: i64, count: i64| -> Scalar {
            (0..count).fold(fp.field.one(), |acc, k| acc.mul(fp.q2(i + k, j)))
        };
        let mut m = SparseMatrix::zero(target.len(), source.len(), fp.field);
        for (col, (g, x)) in source.iter().enumerate() {
            let (p, i, j) = (g.p as i64, g.i as i64, g.j as i64);
            let li = l as i64;
            let terms: [(GenLabel, Path, Path, Scalar); 4] = [
                // (g^l_{p,i,j-1}, a_{i,j-1} x)
                (
                    label(p, i, j - 1),
                    arrow_a(i, j - 1),
                    q.trivial_path(q.path_target(x)),
                    one.clone(),
                ),
                // q_{i-1,j}...q_{i-1,j+l-p-2} (g^l_{p+1,i-1,j}, b_{i-1,j} x)
                (
                    label(p + 1, i - 1, j),
                    arrow_b(i - 1, j),
                    q.trivial_path(q.path_target(x)),
                    q_row(i - 1, j, li - p - 1),
                ),
                // (-1)^l (g^l_{p+1,i,j}, x b_{i+p,j+l-p-1})
                (
                    label(p + 1, i, j),
                    q.trivial_path(q.path_source(x)),
                    arrow_b(i + p, j + li - p - 1),
                    sign.clone(),
                ),
                // (-1)^l q_{i,j+l-p-1}...q_{i+p-1,j+l-p-1} (g^l_{p,i,j}, x a_{i+p,j+l-p-1})
                (
                    label(p, i, j),
                    q.trivial_path(q.path_source(x)),
                    arrow_a(i + p, j + li - p - 1),
                    sign.mul(&q_col(i, j + li - p - 1, p)),
                ),
            ];
            for (tgt_label, left, right, coeff) in terms {
                if coeff.is_zero() {
                    continue;
                }
                let Some(full) = q.compose(&left, x).and_then(|lx| q.compose(&lx, &right)) else {
                    continue;
                };
                let reduced = self
                    .res
                    .alg
                    .normal_form(&[(full, one.clone())].into_iter().collect());
                for (z, lam) in reduced {
                    m.add_to(index[&(tgt_label, z)], col, &coeff.mul(&lam));
                }
            }
        }
        m
    }

    /// dim HH^l = dim M^l - rank delta^{l+1} - rank delta^l.
    pub fn hh_dimension(&self, l: usize) -> usize {
        let dim = self.cochain_basis(l).len();
        let out = self.delta_matrix(l + 1).rank();
        let inn = if l == 0 { 0 } else { self.delta_matrix(l).rank() };
        dim - out - inn
    }

    /// The degree-one cocycle supported on the a-class arrows.
    pub fn one_cocycle_a(&self) -> Cochain {
        self.indicator_cochain(1, 0, |label, x| {
            x.len() == 1 && x.arrows[0] == label.i * self.res.fp.m + label.j
        })
    }

    /// The degree-one cocycle supported on the b-class arrows.
    pub fn one_cocycle_b(&self) -> Cochain {
        let mn = self.res.fp.m * self.res.fp.n;
        self.indicator_cochain(1, 1, |label, x| {
            x.len() == 1 && x.arrows[0] == mn + label.i * self.res.fp.m + label.j
        })
    }

    /// The degree-two cocycle supported on the length-two normal monomials.
    pub fn two_cocycle_ab(&self) -> Cochain {
        self.indicator_cochain(2, 1, |_, x| x.len() == 2)
    }

    fn indicator_cochain(
        &self,
        l: usize,
        p: usize,
        keep: impl Fn(&GenLabel, &Path) -> bool,
    ) -> Cochain {
        self.cochain_basis(l)
            .iter()
            .map(|(g, x)| {
                if g.p == p && keep(g, x) {
                    self.res.fp.field.one()
                } else {
                    self.res.fp.field.zero()
                }
            })
            .collect()
    }

    /// Apply a degree-l cochain (as a map P_l -> algebra) to an element of P_l.
    pub fn cochain_apply(&self, l: usize, f: &Cochain, x: &TensorElement) -> LinCombo {
        let basis = self.cochain_basis(l);
        let mut values: HashMap<GenLabel, LinCombo> = HashMap::new();
        for (k, (g, mono)) in basis.iter().enumerate() {
            if f[k].is_zero() {
                continue;
            }
            let entry = values.entry(*g).or_default();
            crate::quiver::combo_add_term(entry, mono.clone(), &f[k]);
        }
        let q = self.res.alg.quiver();
        let one = self.res.fp.field.one();
        let mut out = LinCombo::new();
        for ((left, g, right), c) in x {
            let Some(val) = values.get(g) else { continue };
            for (mono, vc) in val {
                let full = q
                    .compose(&q.compose(left, mono).unwrap(), right)
                    .expect("parallel cochain value");
                let reduced = self
                    .res
                    .alg
                    .normal_form(&[(full, one.clone())].into_iter().collect());
                for (z, lam) in reduced {
                    crate::quiver::combo_add_term(&mut out, z, &c.mul(&vc).mul(&lam));
                }
            }
        }
        out
    }

    /// Solve for a bimodule lifting psi_0 : P_1 -> P_0 of a degree-one
    /// cocycle f through the augmentation: mu psi_0 = f.
    pub fn lift_through_augmentation(
        &self,
        f: &Cochain,
    ) -> Result<HashMap<GenLabel, TensorElement>, Error> {
        let monomials = self.all_monomials();
        let index: BTreeMap<&Path, usize> =
            monomials.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let q = self.res.alg.quiver();
        let one = self.res.fp.field.one();
        let p0 = self.res.module_basis(0)?;
        let mut out = HashMap::new();
        for g in self.res.labels(1) {
            // target value f(g) in the algebra
            let elem: TensorElement = [(
                (
                    q.trivial_path(g.i * self.res.fp.m + g.j),
                    g,
                    q.trivial_path({
                        let i = (g.i + g.p) % self.res.fp.n;
                        let j = (g.j + 1 - g.p) % self.res.fp.m;
                        i * self.res.fp.m + j
                    }),
                ),
                one.clone(),
            )]
            .into_iter()
            .collect();
            let value = self.cochain_apply(1, f, &elem);
            let mut rhs = vec![self.res.fp.field.zero(); monomials.len()];
            for (z, c) in &value {
                rhs[index[z]] = c.clone();
            }
            // candidates: degree-one elements of e P_0 e with the endpoints of g
            let src = g.i * self.res.fp.m + g.j;
            let tgt = {
                let i = (g.i + g.p) % self.res.fp.n;
                let j = (g.j + 1 - g.p) % self.res.fp.m;
                i * self.res.fp.m + j
            };
            let candidates: Vec<&(Path, GenLabel, Path)> = p0
                .iter()
                .filter(|(l2, _, r2)| {
                    l2.len() + r2.len() == 1
                        && q.path_source(l2) == src
                        && q.path_target(r2) == tgt
                })
                .collect();
            let mut m = SparseMatrix::zero(monomials.len(), candidates.len(), self.res.fp.field);
            for (col, (l2, _, r2)) in candidates.iter().enumerate() {
                let full = q.compose(l2, r2).expect("composable candidate");
                let reduced = self
                    .res
                    .alg
                    .normal_form(&[(full, one.clone())].into_iter().collect());
                for (z, lam) in reduced {
                    m.add_to(index[&z], col, &lam);
                }
            }
            let sol = m
                .solve(&rhs)?
                .ok_or_else(|| Error::new("no lifting through the augmentation"))?;
            let mut image = TensorElement::new();
            for (col, c) in sol.iter().enumerate() {
                if !c.is_zero() {
                    image.insert(candidates[col].clone(), c.clone());
                }
            }
            out.insert(g, image);
        }
        Ok(out)
    }

    /// Extend a generator-level bimodule map to a full element of P_l.
    pub fn bimodule_apply(
        &self,
        map: &HashMap<GenLabel, TensorElement>,
        x: &TensorElement,
    ) -> TensorElement {
        let q = self.res.alg.quiver();
        let one = self.res.fp.field.one();
        let mut out = TensorElement::new();
        for ((left, g, right), c) in x {
            let Some(image) = map.get(g) else { continue };
            for ((l2, g2, r2), c2) in image {
                let new_left = q.compose(left, l2).expect("composable lift term");
                let new_right = q.compose(r2, right).expect("composable lift term");
                let left_nf = self
                    .res
                    .alg
                    .normal_form(&[(new_left, one.clone())].into_iter().collect());
                let right_nf = self
                    .res
                    .alg
                    .normal_form(&[(new_right, one.clone())].into_iter().collect());
                for (lp, lc) in &left_nf {
                    for (rp, rc) in &right_nf {
                        let coeff = c.mul(c2).mul(lc).mul(rc);
                        let key = (lp.clone(), *g2, rp.clone());
                        let cur = out.remove(&key);
                        let sum = match cur {
                            None => coeff,
                            Some(prev) => prev.add(&coeff),
                        };
                        if !sum.is_zero() {
                            out.insert(key, sum);
                        }
                    }
                }
            }
        }
        out
    }

    /// Solve for psi_1 : P_2 -> P_1 with d_1 psi_1 = psi_0 d_2.
    pub fn lift_one_step(
        &self,
        psi0: &HashMap<GenLabel, TensorElement>,
    ) -> Result<HashMap<GenLabel, TensorElement>, Error> {
        let q = self.res.alg.quiver();
        let p0 = self.res.module_basis(0)?;
        let p1 = self.res.module_basis(1)?;
        let index: BTreeMap<&(Path, GenLabel, Path), usize> =
            p0.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let mut out = HashMap::new();
        for g in self.res.labels(2) {
            let rhs_elem =
                self.bimodule_apply(psi0, &self.res.differential(2, g.p as i64, g.i as i64, g.j as i64));
            let mut rhs = vec![self.res.fp.field.zero(); p0.len()];
            for (term, c) in &rhs_elem {
                rhs[index[term]] = c.clone();
            }
            let src = g.i * self.res.fp.m + g.j;
            let tgt = {
                let i = (g.i + g.p) % self.res.fp.n;
                let j = (g.j + 2 - g.p) % self.res.fp.m;
                i * self.res.fp.m + j
            };
            let candidates: Vec<&(Path, GenLabel, Path)> = p1
                .iter()
                .filter(|(l2, _, r2)| {
                    l2.len() + r2.len() == 1
                        && q.path_source(l2) == src
                        && q.path_target(r2) == tgt
                })
                .collect();
            let mut m = SparseMatrix::zero(p0.len(), candidates.len(), self.res.fp.field);
            for (col, cand) in candidates.iter().enumerate() {
                let elem: TensorElement = [((*cand).clone(), self.res.fp.field.one())]
                    .into_iter()
                    .collect();
                for (term, c) in self.res.apply_differential(1, &elem) {
                    m.add_to(index[&term], col, &c);
                }
            }
            let sol = m
                .solve(&rhs)?
                .ok_or_else(|| Error::new("no lifting of the comparison map"))?;
            let mut image = TensorElement::new();
            for (col, c) in sol.iter().enumerate() {
                if !c.is_zero() {
                    image.insert(candidates[col].clone(), c.clone());
                }
            }
            out.insert(g, image);
        }
        Ok(out)
    }

    /// Cup product of two degree-one cochains as a degree-two cochain:
    /// lift g through the augmentation and one step, then compose with f.
    pub fn cup_one_one(&self, f: &Cochain, g: &Cochain) -> Result<Cochain, Error> {
        let psi0 = self.lift_through_augmentation(g)?;
        let psi1 = self.lift_one_step(&psi0)?;
        self.compose_with_lift(f, &psi1)
    }

    /// The degree-two cochain f composed with a lifting psi_1.
    pub fn compose_with_lift(
        &self,
        f: &Cochain,
        psi1: &HashMap<GenLabel, TensorElement>,
    ) -> Result<Cochain, Error> {
        let basis = self.cochain_basis(2);
        let index: BTreeMap<&(GenLabel, Path), usize> =
            basis.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let mut out = vec![self.res.fp.field.zero(); basis.len()];
        for g in self.res.labels(2) {
            let Some(image) = psi1.get(&g) else { continue };
            let value = self.cochain_apply(1, f, image);
            for (z, c) in value {
                let k = *index
                    .get(&(g, z))
                    .ok_or_else(|| Error::new("cup value is not parallel"))?;
                out[k] = out[k].add(&c);
            }
        }
        Ok(out)
    }

    /// Whether a degree-l cochain is a coboundary.
    pub fn is_coboundary(&self, l: usize, f: &Cochain) -> Result<bool, Error> {
        if f.iter().all(|c| c.is_zero()) {
            return Ok(true);
        }
        if l == 0 {
            return Ok(false);
        }
        Ok(self.delta_matrix(l).solve(f)?.is_some())
    }

    /// Whether a degree-l cochain is a cocycle.
    pub fn is_cocycle(&self, l: usize, f: &Cochain) -> bool {
        self.delta_matrix(l + 1)
            .mul_vector(f)
            .iter()
            .all(|c| c.is_zero())
    }

    /// Whether two cocycles define the same cohomology class.
    pub fn classes_equal(&self, l: usize, f: &Cochain, g: &Cochain) -> Result<bool, Error> {
        let diff: Cochain = f.iter().zip(g).map(|(a, b)| a.sub(b)).collect();
        self.is_coboundary(l, &diff)
    }

    /// The printed comparison maps psi_0 and psi_1 lifting the b-class
    /// cocycle, used as a fixture.
    pub fn printed_lift(&self) -> (HashMap<GenLabel, TensorElement>, HashMap<GenLabel, TensorElement>) {
        let fp = self.res.fp;
        let q = self.res.alg.quiver();
        let one = fp.field.one();
        let vertex = |i: usize, j: usize| (i % fp.n) * fp.m + (j % fp.m);
        let arrow_b = |i: usize, j: usize| q.arrow_path(fp.m * fp.n + (i % fp.n) * fp.m + (j % fp.m));
        let mut psi0 = HashMap::new();
        let mut psi1 = HashMap::new();
        for i in 0..fp.n {
            for j in 0..fp.m {
                psi0.insert(GenLabel { l: 1, p: 0, i, j }, TensorElement::new());
                // g^1_{1ij} -> b_{ij} g^0_{0,i+1,j}
                psi0.insert(
                    GenLabel { l: 1, p: 1, i, j },
                    [(
                        (arrow_b(i, j), GenLabel { l: 0, p: 0, i: (i + 1) % fp.n, j }, q.trivial_path(vertex(i + 1, j))),
                        one.clone(),
                    )]
                    .into_iter()
                    .collect(),
                );
                psi1.insert(GenLabel { l: 2, p: 0, i, j }, TensorElement::new());
                // g^2_{1ij} -> -q_{ij} b_{ij} g^1_{0,i+1,j}
                psi1.insert(
                    GenLabel { l: 2, p: 1, i, j },
                    [(
                        (arrow_b(i, j), GenLabel { l: 1, p: 0, i: (i + 1) % fp.n, j }, q.trivial_path(vertex(i + 1, j + 1))),
                        fp.q2(i as i64, j as i64).neg(),
                    )]
                    .into_iter()
                    .collect(),
                );
                // g^2_{2ij} -> -b_{ij} g^1_{1,i+1,j}
                psi1.insert(
                    GenLabel { l: 2, p: 2, i, j },
                    [(
                        (arrow_b(i, j), GenLabel { l: 1, p: 1, i: (i + 1) % fp.n, j }, q.trivial_path(vertex(i + 2, j))),
                        one.neg(),
                    )]
                    .into_iter()
                    .collect(),
                );
            }
        }
        (psi0, psi1)
    }

    /// Check that a pair (psi_0, psi_1) is a valid lifting of a degree-one
    /// cocycle f: mu psi_0 = f on generators and d_1 psi_1 = psi_0 d_2.
    pub fn lift_is_valid(
        &self,
        f: &Cochain,
        psi0: &HashMap<GenLabel, TensorElement>,
        psi1: &HashMap<GenLabel, TensorElement>,
    ) -> Result<bool, Error> {
        let q = self.res.alg.quiver();
        let one = self.res.fp.field.one();
        for g in self.res.labels(1) {
            let elem: TensorElement = [(
                (
                    q.trivial_path(g.i * self.res.fp.m + g.j),
                    g,
                    q.trivial_path({
                        let i = (g.i + g.p) % self.res.fp.n;
                        let j = (g.j + 1 - g.p) % self.res.fp.m;
                        i * self.res.fp.m + j
                    }),
                ),
                one.clone(),
            )]
            .into_iter()
            .collect();
            let expected = self.cochain_apply(1, f, &elem);
            // mu applied to psi0(g)
            let mut got = LinCombo::new();
            if let Some(image) = psi0.get(&g) {
                for ((l2, _, r2), c) in image {
                    let full = q.compose(l2, r2).expect("composable term");
                    let reduced = self
                        .res
                        .alg
                        .normal_form(&[(full, one.clone())].into_iter().collect());
                    for (z, lam) in reduced {
                        crate::quiver::combo_add_term(&mut got, z, &c.mul(&lam));
                    }
                }
            }
            if crate::quiver::combo_sub(&expected, &got).len() != 0 {
                return Ok(false);
            }
        }
        for g in self.res.labels(2) {
            let rhs = self
                .bimodule_apply(psi0, &self.res.differential(2, g.p as i64, g.i as i64, g.j as i64));
            let lhs = match psi1.get(&g) {
                Some(image) => self.res.apply_differential(1, image),
                None => TensorElement::new(),
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Brute-force dimension of the (ungraded) center of the algebra, for
    /// cross-checking dim HH^0.
    pub fn center_dimension(&self) -> Result<usize, Error> {
        let monomials = self.all_monomials();
        let index: BTreeMap<&Path, usize> =
            monomials.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let alg = self.res.alg;
        let q = alg.quiver();
        let field = self.res.fp.field;
        let mut constraints: Vec<Vec<(usize, Scalar)>> = Vec::new();
        let mut gens: Vec<LinCombo> = Vec::new();
        for v in 0..q.vertices.len() {
            gens.push([(q.trivial_path(v), field.one())].into_iter().collect());
        }
        for a in 0..q.arrows.len() {
            gens.push([(q.arrow_path(a), field.one())].into_iter().collect());
        }
        for g in &gens {
            let mut rows: BTreeMap<Path, Vec<(usize, Scalar)>> = BTreeMap::new();
            for (col, mono) in monomials.iter().enumerate() {
                let z: LinCombo = [(mono.clone(), field.one())].into_iter().collect();
                let residual = crate::quiver::combo_sub(&alg.mul(g, &z), &alg.mul(&z, g));
                for (path, c) in residual {
                    rows.entry(path).or_default().push((col, c));
                }
            }
            constraints.extend(rows.into_values());
        }
        let mut m = SparseMatrix::zero(constraints.len(), monomials.len(), field);
        for (r, row) in constraints.iter().enumerate() {
            for (c, v) in row {
                m.add_to(r, *c, v);
            }
        }
        let _ = index;
        Ok(monomials.len() - m.rank())
    }
}
