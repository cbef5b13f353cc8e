//! Dolbeault cohomology of products of Sasakian spheres as finite linear
//! algebra over `Q`.
//!
//! A [`TransverseModel`] records basic Hodge numbers and the Lefschetz maps
//! `L: H^{p,q} → H^{p+1,q+1}`. The complex extended by `η^{0,1}` has
//! `A^{p,q} = H^{p,q} ⊕ η^{0,1}·H^{p,q−1}`, and the Hodge numbers of the
//! product come from the long exact sequence of the cone of `L`.

pub mod model_file;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::checks::{CriterionKind, VerificationReport, Witness};
use crate::error::{Error, Result};
pub use rational::QMatrix;

/// Basic cohomology of a transversally Kähler foliation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransverseModel {
    n_transverse: usize,
    dims: BTreeMap<(usize, usize), usize>,
    lefschetz: BTreeMap<(usize, usize), QMatrix>,
}

fn idx(p: i64, q: i64) -> Option<(usize, usize)> {
    (p >= 0 && q >= 0).then_some((p as usize, q as usize))
}

impl TransverseModel {
    /// Builds and validates a model. Zero dimensions and missing maps are
    /// allowed; a missing map between nonzero spaces means `L = 0`.
    pub fn new(
        n_transverse: usize,
        dims: BTreeMap<(usize, usize), usize>,
        lefschetz: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<_, _> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let model = Self { n_transverse, dims, lefschetz };
        model.validate()?;
        Ok(model)
    }

    pub fn n_transverse(&self) -> usize {
        self.n_transverse
    }

    pub fn dims(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.dims
    }

    pub fn lefschetz_maps(&self) -> &BTreeMap<(usize, usize), QMatrix> {
        &self.lefschetz
    }

    /// `h_bas^{p,q}`, zero outside the support.
    pub fn dim(&self, p: i64, q: i64) -> usize {
        idx(p, q).and_then(|k| self.dims.get(&k).copied()).unwrap_or(0)
    }

    /// `L: H^{p,q} → H^{p+1,q+1}`.
    pub fn lefschetz(&self, p: i64, q: i64) -> QMatrix {
        let shape = (self.dim(p + 1, q + 1), self.dim(p, q));
        idx(p, q)
            .and_then(|k| self.lefschetz.get(&k))
            .filter(|m| m.shape() == shape)
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(shape.0, shape.1))
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_transverse;
        for &(p, q) in self.dims.keys() {
            if p > n || q > n {
                return Err(Error::ModelMismatch(format!(
                    "h^{{{p},{q}}} lies outside 0..={n}"
                )));
            }
        }
        for (&(p, q), m) in &self.lefschetz {
            let shape = (self.dim(p as i64 + 1, q as i64 + 1), self.dim(p as i64, q as i64));
            if m.shape() != shape {
                return Err(Error::ModelMismatch(format!(
                    "L at ({p},{q}) has shape {:?}, expected {:?}",
                    m.shape(),
                    shape
                )));
            }
        }
        for p in 0..=n as i64 {
            for q in 0..=n as i64 {
                let l = self.lefschetz(p, q);
                let rank = l.rank();
                let degree = (p + q) as usize;
                if degree < n && rank != l.cols() {
                    return Err(Error::ModelMismatch(format!(
                        "L is not injective on H^{{{p},{q}}} (rank {rank} < {})",
                        l.cols()
                    )));
                }
                if degree + 2 > n && rank != l.rows() {
                    return Err(Error::ModelMismatch(format!(
                        "L is not surjective onto H^{{{},{}}} (rank {rank} < {})",
                        p + 1,
                        q + 1,
                        l.rows()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Basic cohomology of the Reeb foliation of the round `S^{2n+1}`, i.e.
/// `H(CP^n)` with `L` multiplication by the hyperplane class.
pub fn cpn_model(n: usize) -> TransverseModel {
    let dims = (0..=n).map(|p| ((p, p), 1)).collect();
    let lefschetz = (0..n).map(|p| ((p, p), QMatrix::identity(1))).collect();
    TransverseModel { n_transverse: n, dims, lefschetz }
}

/// `(p₁,q₁)`, `(p₂,q₂)` and the offset of their block.
type TensorBlock = ((usize, usize), (usize, usize), usize);

/// Ordered blocks `(p₁,q₁) ⊗ (p₂,q₂)` of the tensor product at `(p, q)`
/// with their offsets.
fn tensor_blocks(
    m1: &TransverseModel,
    m2: &TransverseModel,
    p: usize,
    q: usize,
) -> Vec<TensorBlock> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (&(p1, q1), &d1) in &m1.dims {
        if p1 > p || q1 > q {
            continue;
        }
        let d2 = m2.dim((p - p1) as i64, (q - q1) as i64);
        if d2 == 0 {
            continue;
        }
        out.push(((p1, q1), (p - p1, q - q1), offset));
        offset += d1 * d2;
    }
    out
}

/// Bigraded tensor product with `L = L₁ ⊗ 1 + 1 ⊗ L₂`.
pub fn tensor_model(m1: &TransverseModel, m2: &TransverseModel) -> Result<TransverseModel> {
    let n = m1.n_transverse + m2.n_transverse;
    let mut dims = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let d: usize = tensor_blocks(m1, m2, p, q)
                .iter()
                .map(|&((p1, q1), (p2, q2), _)| m1.dim(p1 as i64, q1 as i64) * m2.dim(p2 as i64, q2 as i64))
                .sum();
            if d > 0 {
                dims.insert((p, q), d);
            }
        }
    }
    let dim = |p: usize, q: usize| dims.get(&(p, q)).copied().unwrap_or(0);
    let mut lefschetz = BTreeMap::new();
    for &(p, q) in dims.keys() {
        let target = dim(p + 1, q + 1);
        if target == 0 {
            continue;
        }
        let mut l = QMatrix::zeros(target, dim(p, q));
        let tgt_blocks = tensor_blocks(m1, m2, p + 1, q + 1);
        let offset_of = |a: (usize, usize), b: (usize, usize)| {
            tgt_blocks.iter().find(|&&(x, y, _)| x == a && y == b).map(|&(_, _, o)| o)
        };
        for ((p1, q1), (p2, q2), col) in tensor_blocks(m1, m2, p, q) {
            let (d1, d2) = (m1.dim(p1 as i64, q1 as i64), m2.dim(p2 as i64, q2 as i64));
            if let Some(row) = offset_of((p1 + 1, q1 + 1), (p2, q2)) {
                l.add_block(row, col, &m1.lefschetz(p1 as i64, q1 as i64).kron(&QMatrix::identity(d2)));
            }
            if let Some(row) = offset_of((p1, q1), (p2 + 1, q2 + 1)) {
                l.add_block(row, col, &QMatrix::identity(d1).kron(&m2.lefschetz(p2 as i64, q2 as i64)));
            }
        }
        lefschetz.insert((p, q), l);
    }
    TransverseModel::new(n, dims, lefschetz)
}

/// The complex `A^{p,q} = H^{p,q} ⊕ η^{0,1}·H^{p,q−1}`, pure block first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaComplexDims {
    model: TransverseModel,
}

impl EtaComplexDims {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.model.dim(p, q) + self.model.dim(p, q - 1)
    }

    /// `L` on `A^{p,q}`, acting separately on the two blocks.
    pub fn lefschetz(&self, p: i64, q: i64) -> QMatrix {
        QMatrix::block_diag(&self.model.lefschetz(p, q), &self.model.lefschetz(p, q - 1))
    }

    pub fn rank(&self, p: i64, q: i64) -> usize {
        self.lefschetz(p, q).rank()
    }

    /// Nonzero `A^{p,q}`.
    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        let n = self.model.n_transverse as i64;
        let mut out = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n + 1 {
                let d = self.dim(p, q);
                if d > 0 {
                    out.insert((p as usize, q as usize), d);
                }
            }
        }
        out
    }
}

pub fn eta_complex_cohomology(model: &TransverseModel) -> EtaComplexDims {
    EtaComplexDims { model: model.clone() }
}

/// `h^{p,q}` for `0 ≤ p, q ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    n: usize,
    h: Vec<Vec<usize>>,
}

impl HodgeDiamond {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        Self {
            n,
            h: (0..=n).map(|p| (0..=n).map(|q| f(p, q)).collect()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.h.get(p).and_then(|r| r.get(q)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, q: usize, v: usize) {
        self.h[p][q] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..=self.n).flat_map(move |p| (0..=self.n).map(move |q| (p, q, self.h[p][q])))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries()
            .map(|(p, q, h)| if (p + q) % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }

    /// `Σ_{p+q=k} h^{p,q}` for `k = 0..=2n`.
    pub fn degree_sums(&self) -> Vec<usize> {
        let mut out = vec![0; 2 * self.n + 1];
        for (p, q, h) in self.entries() {
            out[p + q] += h;
        }
        out
    }

    /// Diamond layout, one row per total degree, `h^{k,0}` leftmost.
    pub fn render_text(&self) -> String {
        let n = self.n;
        let rows: Vec<String> = (0..=2 * n)
            .map(|k| {
                (k.saturating_sub(n)..=k.min(n))
                    .rev()
                    .map(|p| self.get(p, k - p).to_string())
                    .collect::<Vec<_>>()
                    .join("   ")
            })
            .collect();
        let width = rows.iter().map(String::len).max().unwrap_or(0);
        rows.iter()
            .map(|r| format!("{:>w$}", r, w = (width + r.len()) / 2).trim_end().to_string() + "\n")
            .collect()
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

#[derive(Serialize)]
struct Entry {
    p: usize,
    q: usize,
    h: usize,
}

impl Serialize for HodgeDiamond {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self.entries().map(|(p, q, h)| Entry { p, q, h }).collect();
        let mut st = s.serialize_struct("HodgeDiamond", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// `h^{p,q} = dim coker(L: A^{p−1,q−1} → A^{p,q}) + dim ker(L: A^{p−1,q} → A^{p,q+1})`.
pub fn dolbeault_hodge_numbers(model: &TransverseModel, dim_c: usize) -> Result<HodgeDiamond> {
    if dim_c != model.n_transverse + 1 {
        return Err(Error::ModelMismatch(format!(
            "complex dimension {dim_c} does not match transverse dimension {} + 1",
            model.n_transverse
        )));
    }
    let a = eta_complex_cohomology(model);
    Ok(HodgeDiamond::from_fn(dim_c, |p, q| {
        let (p, q) = (p as i64, q as i64);
        let coker = a.dim(p, q) - a.rank(p - 1, q - 1);
        let ker = a.dim(p - 1, q) - a.rank(p - 1, q);
        coker + ker
    }))
}

/// Betti numbers of a Sasakian manifold as far as basic cohomology
/// determines them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub real_dim: usize,
    pub known: BTreeMap<usize, usize>,
    pub undetermined: Vec<usize>,
}

/// `b_k = dim coker(L: H^{k−2} → H^k)` for `k < n`, then Poincaré duality.
pub fn sasakian_betti(model: &TransverseModel, n: usize) -> Result<BettiTable> {
    if n != model.n_transverse {
        return Err(Error::ModelMismatch(format!(
            "n = {n} does not match transverse dimension {}",
            model.n_transverse
        )));
    }
    let mut known = BTreeMap::new();
    for k in 0..n {
        let b: usize = (0..=k as i64)
            .map(|p| {
                let q = k as i64 - p;
                model.dim(p, q) - model.lefschetz(p - 1, q - 1).rank()
            })
            .sum();
        known.insert(k, b);
        known.insert(2 * n + 1 - k, b);
    }
    Ok(BettiTable {
        real_dim: 2 * n + 1,
        known,
        undetermined: vec![n, n + 1],
    })
}

/// Betti numbers of `S^{2n₁+1} × S^{2n₂+1}` by Künneth.
pub fn kunneth_betti_sphere_product(n1: usize, n2: usize) -> Vec<usize> {
    let (d1, d2) = (2 * n1 + 1, 2 * n2 + 1);
    let mut b = vec![0; d1 + d2 + 1];
    for k in [0, d1, d2, d1 + d2] {
        b[k] += 1;
    }
    b
}

/// Transverse model of `S^{2n₁+1} × S^{2n₂+1}` with the summed transverse class.
pub fn sphere_product_model(n1: usize, n2: usize) -> TransverseModel {
    tensor_model(&cpn_model(n1), &cpn_model(n2)).expect("products of CP^n models are valid")
}

/// Euler characteristic, Serre symmetry and the Frölicher inequalities.
pub fn diamond_consistency(d: &HodgeDiamond, betti: &[usize]) -> VerificationReport {
    let n = d.n();
    let mut violations = Vec::new();
    let chi = d.euler_characteristic();
    if chi != 0 {
        violations.push(format!("euler-characteristic: chi = {chi}, expected 0"));
    }
    for (p, q, h) in d.entries() {
        let dual = d.get(n - p, n - q);
        if h != dual && (p, q) < (n - p, n - q) {
            violations.push(format!("serre-symmetry: h^{{{p},{q}}} = {h} but h^{{{},{}}} = {dual}", n - p, n - q));
        }
    }
    if betti.len() != 2 * n + 1 {
        violations.push(format!("dimension: {} Betti numbers for complex dimension {n}", betti.len()));
    } else {
        for (k, (&b, s)) in betti.iter().zip(d.degree_sums()).enumerate() {
            if b > s {
                violations.push(format!("frolicher: b_{k} = {b} exceeds sum of h^{{p,q}} with p+q={k} = {s}"));
            }
        }
    }
    let defect = violations.len() as f64;
    VerificationReport {
        suite: "diamond-consistency".into(),
        samples: 1,
        max_defect: defect,
        tol: 0.0,
        kind: CriterionKind::AtMost,
        passed: violations.is_empty(),
        witnesses: violations
            .into_iter()
            .map(|v| Witness { point: Vec::new(), vectors: Vec::new(), defect: 1.0, note: Some(v) })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond_of(n1: usize, n2: usize) -> HodgeDiamond {
        dolbeault_hodge_numbers(&sphere_product_model(n1, n2), n1 + n2 + 1).unwrap()
    }

    fn ones_at(n: usize, cells: &[(usize, usize)]) -> HodgeDiamond {
        HodgeDiamond::from_fn(n, |p, q| cells.contains(&(p, q)) as usize)
    }

    #[test]
    fn cpn_examples() {
        let m = cpn_model(0);
        assert_eq!(m.dims().len(), 1);
        assert_eq!(m.dim(0, 0), 1);
        let m = cpn_model(1);
        assert_eq!((m.dim(0, 0), m.dim(1, 1), m.dim(0, 1)), (1, 1, 0));
        assert_eq!(m.lefschetz(0, 0).rank(), 1);
    }

    #[test]
    fn tensor_examples() {
        let cp1 = cpn_model(1);
        assert_eq!(tensor_model(&cp1, &cpn_model(0)).unwrap(), cp1);
        let m = sphere_product_model(1, 1);
        assert_eq!((m.dim(0, 0), m.dim(1, 1), m.dim(2, 2)), (1, 2, 1));
        assert_eq!(m.lefschetz(1, 1).rank(), 1);
        assert_eq!(m.lefschetz(0, 0).rank(), 1);
        assert_eq!(m.lefschetz(1, 1), QMatrix::from_i64(1, 2, &[1, 1]));
    }

    #[test]
    fn eta_complex_examples() {
        let a = eta_complex_cohomology(&cpn_model(1));
        assert_eq!(a.dim(0, 1), 1);
        let a = eta_complex_cohomology(&sphere_product_model(1, 1));
        assert_eq!(a.dim(1, 2), 2);
        for ((p, q), d) in a.dims() {
            assert!(d > 0);
            let m = sphere_product_model(1, 1);
            assert!(m.dim(p as i64, q as i64) + m.dim(p as i64, q as i64 - 1) > 0);
        }
        assert_eq!(a.dim(2, 0), 0);
    }

    #[test]
    fn hopf_diamond() {
        let d = diamond_of(1, 0);
        assert_eq!(d, ones_at(2, &[(0, 0), (0, 1), (2, 1), (2, 2)]));
        assert!(diamond_consistency(&d, &kunneth_betti_sphere_product(1, 0)).passed);
        assert_eq!(diamond_of(0, 1), d);
    }

    #[test]
    fn calabi_eckmann_diamond() {
        let d = diamond_of(1, 1);
        let cells = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (3, 3)];
        assert_eq!(d, ones_at(3, &cells));
        assert!(diamond_consistency(&d, &kunneth_betti_sphere_product(1, 1)).passed);
    }

    #[test]
    fn torus_like_quotient() {
        let d = diamond_of(0, 0);
        assert_eq!(d, ones_at(1, &[(0, 0), (0, 1), (1, 0), (1, 1)]));
        assert!(diamond_consistency(&d, &kunneth_betti_sphere_product(0, 0)).passed);
    }

    #[test]
    fn generated_diamonds_are_consistent() {
        for n1 in 0..4 {
            for n2 in 0..4 {
                let d = diamond_of(n1, n2);
                let r = diamond_consistency(&d, &kunneth_betti_sphere_product(n1, n2));
                assert!(r.passed, "({n1},{n2}): {:?}", r.witnesses);
            }
        }
    }

    #[test]
    fn exactness_and_quotient_formula() {
        for (n1, n2) in [(1, 0), (1, 1), (2, 1), (2, 2), (3, 1)] {
            let m = sphere_product_model(n1, n2);
            let n = m.n_transverse() as i64;
            let dim_c = n + 1;
            let a = eta_complex_cohomology(&m);
            let d = dolbeault_hodge_numbers(&m, dim_c as usize).unwrap();
            for p in 0..=dim_c {
                for q in 0..=dim_c {
                    let into = a.lefschetz(p - 1, q - 1);
                    assert_eq!(a.dim(p, q), into.rank() + (a.dim(p, q) - into.rank()));
                    if p + q < dim_c {
                        let formula = a.dim(p, q) - a.dim(p - 1, q - 1);
                        assert_eq!(d.get(p as usize, q as usize), formula, "({n1},{n2}) at ({p},{q})");
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_kernel_on_cp1_squared() {
        // L: H^{1,1} → H^{2,2} on CP¹×CP¹ is not injective.
        let m = sphere_product_model(1, 1);
        let l = m.lefschetz(1, 1);
        assert!(l.rank() < l.cols());
    }

    #[test]
    fn betti_examples() {
        let b = sasakian_betti(&cpn_model(1), 1).unwrap();
        assert_eq!(b.known, BTreeMap::from([(0, 1), (3, 1)]));
        let b = sasakian_betti(&cpn_model(2), 2).unwrap();
        assert_eq!(b.known, BTreeMap::from([(0, 1), (1, 0), (4, 0), (5, 1)]));
        assert_eq!(b.undetermined, vec![2, 3]);
        assert!(sasakian_betti(&cpn_model(0), 0).unwrap().known.is_empty());
        assert_eq!(kunneth_betti_sphere_product(1, 0), vec![1, 1, 0, 1, 1]);
        assert_eq!(kunneth_betti_sphere_product(1, 1), vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn consistency_negative_control() {
        let mut d = diamond_of(1, 0);
        d.set(0, 1, 0);
        let r = diamond_consistency(&d, &kunneth_betti_sphere_product(1, 0));
        assert!(!r.passed);
        let notes: Vec<_> = r.witnesses.iter().filter_map(|w| w.note.clone()).collect();
        assert!(notes.iter().any(|n| n.starts_with("serre-symmetry")));
        assert!(notes.iter().any(|n| n.starts_with("euler-characteristic")));
        assert!(notes.iter().any(|n| n.starts_with("frolicher")));
    }

    #[test]
    fn model_validation() {
        assert!(matches!(dolbeault_hodge_numbers(&cpn_model(1), 3), Err(Error::ModelMismatch(_))));
        let dims = BTreeMap::from([((0, 0), 1), ((1, 1), 1)]);
        let bad = TransverseModel::new(1, dims.clone(), BTreeMap::new());
        assert!(matches!(bad, Err(Error::ModelMismatch(_))));
        let shape = TransverseModel::new(1, dims, BTreeMap::from([((0, 0), QMatrix::identity(2))]));
        assert!(matches!(shape, Err(Error::ModelMismatch(_))));
        let out = TransverseModel::new(0, BTreeMap::from([((1, 0), 1)]), BTreeMap::new());
        assert!(matches!(out, Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn diamond_json_and_text() {
        let d = diamond_of(1, 0);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.starts_with(r#"{"n":2,"entries":[{"p":0,"q":0,"h":1}"#));
        let text = d.render_text();
        assert_eq!(text.lines().count(), 5);
        assert_eq!(text.lines().next().unwrap().trim(), "1");
    }
}
