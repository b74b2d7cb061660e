//! Differential graded algebras, strictly associative, and the dg version of
//! unitalization `A ↦ k ⊕ A` with `k` placed in degree 0.

use std::collections::BTreeMap;

use crate::algebra::NonUnitalAlgebra;
use crate::chain::{
    associator, cone, is_quasi_iso, stable_counit_check, stable_unit_check, strict_kernel, tensor_blocks,
    tensor_complex, tensor_map, ChainComplex, ChainMap, Degree,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::factor_through_kernel;
use crate::matrix::Matrix;
use crate::report::{Check, Report};

/// A complex with an associative chain map `C ⊗ C → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGAlgebraNU {
    pub carrier: ChainComplex,
    pub mult: ChainMap,
}

/// `(C ⊗ D)_n` column `col` as `(p, i, q, j)`: the basis element `c_i ⊗ d_j`
/// with `c_i ∈ C_p`, `d_j ∈ D_q`.
pub fn tensor_label(c: &ChainComplex, d: &ChainComplex, n: Degree, col: usize) -> (Degree, usize, Degree, usize) {
    let b = tensor_blocks(c, d, n)
        .into_iter()
        .find(|b| col >= b.offset && col < b.offset + b.len)
        .expect("column inside the tensor degree");
    let u = col - b.offset;
    let dq = d.dim(b.q);
    (b.p, u / dq, b.q, u % dq)
}

/// Builds `C ⊗ C → C` from a bilinear rule on basis elements: `rule(p, i, q, j)`
/// returns the coordinates of `c_i · c_j` in `C_{p+q}`.
pub fn mult_from_rule(
    carrier: &ChainComplex,
    mut rule: impl FnMut(Degree, usize, Degree, usize) -> Vec<Scalar>,
) -> Result<ChainMap> {
    let field = carrier.field();
    let square = tensor_complex(carrier, carrier)?;
    let mut comps = BTreeMap::new();
    for n in square.degrees() {
        let mut m = Matrix::zeros(field, carrier.dim(n), square.dim(n));
        for b in tensor_blocks(carrier, carrier, n) {
            let dq = carrier.dim(b.q);
            for u in 0..b.len {
                let v = rule(b.p, u / dq, b.q, u % dq);
                for (r, x) in v.into_iter().enumerate() {
                    m.set(r, b.offset + u, x);
                }
            }
        }
        comps.insert(n, m);
    }
    ChainMap::new(square, carrier.clone(), comps)
}

impl DGAlgebraNU {
    /// Checks that `mult` is a chain map out of `carrier ⊗ carrier` and associative.
    pub fn new(carrier: ChainComplex, mult: ChainMap) -> Result<Self> {
        let square = tensor_complex(&carrier, &carrier)?;
        if mult.src != square || mult.dst != carrier {
            return Err(Error::ShapeMismatch("multiplication must map C ⊗ C to C".into()));
        }
        let a = DGAlgebraNU { carrier, mult };
        if let Some(w) = a.associativity_defect()? {
            return Err(Error::NotAssociative(w));
        }
        Ok(a)
    }

    /// No validation beyond the chain-map property of `mult`.
    pub fn new_unchecked(carrier: ChainComplex, mult: ChainMap) -> Self {
        DGAlgebraNU { carrier, mult }
    }

    /// An ungraded algebra placed in degree 0.
    pub fn from_algebra(a: &NonUnitalAlgebra) -> Self {
        let carrier = ChainComplex::concentrated(a.field(), 0, a.dim());
        let mult = mult_from_rule(&carrier, |_, i, _, j| a.basis_product(i, j)).expect("degree-0 multiplication");
        DGAlgebraNU { carrier, mult }
    }

    /// `k^dim` in one degree with zero multiplication.
    pub fn square_zero(field: Field, degree: Degree, dim: usize) -> Self {
        Self::zero_mult(ChainComplex::concentrated(field, degree, dim))
    }

    /// Any complex with zero multiplication.
    pub fn zero_mult(carrier: ChainComplex) -> Self {
        let square = tensor_complex(&carrier, &carrier).expect("same field");
        let mult = ChainMap::zero(&square, &carrier);
        DGAlgebraNU { carrier, mult }
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    /// The degree-0 part as an ungraded algebra, when everything lives there.
    pub fn to_algebra(&self) -> Option<NonUnitalAlgebra> {
        if self.carrier.degrees().any(|n| n != 0 && self.carrier.dim(n) > 0) {
            return None;
        }
        NonUnitalAlgebra::from_mult_matrix(&self.mult.component(0)).ok()
    }

    /// Compares `μ(μ ⊗ 1)` with `μ(1 ⊗ μ)` after reassociating, and names
    /// the first basis triple where they differ.
    pub fn associativity_defect(&self) -> Result<Option<String>> {
        let c = &self.carrier;
        let id = ChainMap::identity(c);
        let left = self.mult.compose(&tensor_map(&self.mult, &id)?)?;
        let right = self
            .mult
            .compose(&tensor_map(&id, &self.mult)?)?
            .compose(&associator(c, c, c)?)?;
        let cc = tensor_complex(c, c)?;
        for n in left.degrees() {
            let (l, r) = (left.component(n), right.component(n));
            if let Some((row, col)) = l.first_difference(&r) {
                let (pq, u, s, k) = tensor_label(&cc, c, n, col);
                let (p, i, q, j) = tensor_label(c, c, pq, u);
                return Ok(Some(format!(
                    "degree {n}, basis triple ({p}:{i}, {q}:{j}, {s}:{k}), coordinate {row}"
                )));
            }
        }
        Ok(None)
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![Check::from_defect(
            "carrier.d_squared",
            self.carrier
                .d_squared_defect()
                .map(|(n, (r, c))| format!("degree {n}, entry ({r}, {c})")),
        )];
        out.push(Check::from_defect(
            "mult.chain_map",
            self.mult
                .chain_defect()
                .map(|(n, (r, c))| format!("degree {n}, entry ({r}, {c})")),
        ));
        out.push(match self.associativity_defect() {
            Ok(d) => Check::from_defect("mult.associative", d),
            Err(e) => Check::fail("mult.associative", e.to_string()),
        });
        out
    }
}

/// A dg algebra with unit `k[0] → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalDGAlgebra {
    pub base: DGAlgebraNU,
    pub unit: ChainMap,
}

impl UnitalDGAlgebra {
    pub fn new(base: DGAlgebraNU, unit: ChainMap) -> Result<Self> {
        let a = UnitalDGAlgebra { base, unit };
        if let Some(w) = a.unit_defect()? {
            return Err(Error::Invalid(format!("unit law fails: {w}")));
        }
        Ok(a)
    }

    /// `μ(η ⊗ 1) = 1 = μ(1 ⊗ η)`, using `k[0] ⊗ C = C = C ⊗ k[0]` on the nose.
    pub fn unit_defect(&self) -> Result<Option<String>> {
        let c = &self.base.carrier;
        let id = ChainMap::identity(c);
        let left = self.base.mult.compose(&tensor_map(&self.unit, &id)?)?;
        let right = self.base.mult.compose(&tensor_map(&id, &self.unit)?)?;
        for (side, m) in [("left", left), ("right", right)] {
            for n in c.degrees() {
                if let Some((r, col)) = m.component(n).first_difference(&Matrix::identity(c.field(), c.dim(n))) {
                    return Ok(Some(format!("{side} unit, degree {n}, entry ({r}, {col})")));
                }
            }
        }
        Ok(None)
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = self.base.checks();
        out.push(match self.unit_defect() {
            Ok(d) => Check::from_defect("unit.laws", d),
            Err(e) => Check::fail("unit.laws", e.to_string()),
        });
        out
    }
}

/// A unital dg algebra with an algebra map `ε: C → k[0]` splitting the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedDGAlgebra {
    pub alg: UnitalDGAlgebra,
    pub eps: ChainMap,
}

impl AugmentedDGAlgebra {
    pub fn new(alg: UnitalDGAlgebra, eps: ChainMap) -> Result<Self> {
        let b = AugmentedDGAlgebra { alg, eps };
        if let Some(w) = b.augmentation_defect()? {
            return Err(Error::Invalid(format!("augmentation fails: {w}")));
        }
        Ok(b)
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.alg.base.carrier
    }

    pub fn base(&self) -> &DGAlgebraNU {
        &self.alg.base
    }

    /// `ε μ = ε ⊗ ε` (with `k ⊗ k = k`) and `ε η = 1`.
    pub fn augmentation_defect(&self) -> Result<Option<String>> {
        let lhs = self.eps.compose(&self.alg.base.mult)?;
        let rhs = tensor_map(&self.eps, &self.eps)?;
        if let Some((r, c)) = lhs.component(0).first_difference(&rhs.component(0)) {
            return Ok(Some(format!("ε not multiplicative at degree 0, entry ({r}, {c})")));
        }
        let eu = self.eps.compose(&self.alg.unit)?.component(0);
        if eu != Matrix::identity(self.eps.field(), 1) {
            return Ok(Some("ε ∘ η ≠ 1".into()));
        }
        Ok(None)
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = self.alg.checks();
        out.push(match self.augmentation_defect() {
            Ok(d) => Check::from_defect("augmentation", d),
            Err(e) => Check::fail("augmentation", e.to_string()),
        });
        out
    }
}

/// `k ⊕ A` with `k` in degree 0: in degree 0 the basis is `e₀` followed by
/// the basis of `A₀`; every other degree is `A_n` unchanged.
pub fn dg_unitalize(a: &DGAlgebraNU) -> Result<AugmentedDGAlgebra> {
    if let Some(w) = a.associativity_defect()? {
        return Err(Error::NotAssociative(w));
    }
    let field = a.field();
    let ac = &a.carrier;
    let lo = ac.lo().min(0);
    let hi = ac.hi().max(0);
    let shift = |n: Degree| usize::from(n == 0);
    let dims: Vec<usize> = (lo..=hi).map(|n| ac.dim(n) + shift(n)).collect();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let d = ac.d(n);
        let mut m = Matrix::zeros(field, ac.dim(n - 1) + shift(n - 1), ac.dim(n) + shift(n));
        m.set_block(shift(n - 1), shift(n), &d);
        diffs.insert(n, m);
    }
    let carrier = ChainComplex::new(field, lo, dims, diffs)?;
    let unit_vec = |n: Degree| {
        let mut v = vec![field.zero(); carrier.dim(n)];
        if n == 0 {
            v[0] = field.one();
        }
        v
    };
    let mult = mult_from_rule(&carrier, |p, i, q, j| {
        let unit_i = p == 0 && i == 0;
        let unit_j = q == 0 && j == 0;
        match (unit_i, unit_j) {
            (true, true) => unit_vec(0),
            (true, false) => coordinate(&carrier, q, j),
            (false, true) => coordinate(&carrier, p, i),
            (false, false) => {
                let (ai, aj) = (i - shift(p), j - shift(q));
                let n = p + q;
                let block = tensor_blocks(ac, ac, n)
                    .into_iter()
                    .find(|b| b.p == p)
                    .expect("block of A ⊗ A");
                let col = block.offset + ai * ac.dim(q) + aj;
                let prod = a.mult.component(n).column_vec(col);
                let mut v = vec![field.zero(); shift(n)];
                v.extend(prod);
                v
            }
        }
    })?;
    let base = DGAlgebraNU::new_unchecked(carrier.clone(), mult);
    let k0 = ChainComplex::unit(field);
    let mut ucomps = BTreeMap::new();
    ucomps.insert(0, Matrix::column(field, unit_vec(0)));
    let unit = ChainMap::new(k0.clone(), carrier.clone(), ucomps)?;
    let mut ecomps = BTreeMap::new();
    ecomps.insert(0, Matrix::row(field, unit_vec(0)));
    let eps = ChainMap::new(carrier, k0, ecomps)?;
    AugmentedDGAlgebra::new(UnitalDGAlgebra::new(base, unit)?, eps)
}

fn coordinate(c: &ChainComplex, n: Degree, i: usize) -> Vec<Scalar> {
    let field = c.field();
    let mut v = vec![field.zero(); c.dim(n)];
    v[i] = field.one();
    v
}

/// The strict degreewise kernel of `ε` with the restricted multiplication,
/// and its inclusion.
pub fn dg_augmentation_kernel(b: &AugmentedDGAlgebra) -> Result<(DGAlgebraNU, ChainMap)> {
    let incl = strict_kernel(&b.eps)?;
    let kernel = incl.src.clone();
    let products = b.base().mult.compose(&tensor_map(&incl, &incl)?)?;
    let square = tensor_complex(&kernel, &kernel)?;
    let mut comps = BTreeMap::new();
    for n in square.degrees() {
        let coords = factor_through_kernel(&incl.component(n), &products.component(n))
            .map_err(|_| Error::Invalid(format!("kernel not closed under multiplication in degree {n}")))?;
        comps.insert(n, coords);
    }
    let mult = ChainMap::new(square, kernel.clone(), comps)?;
    Ok((DGAlgebraNU::new(kernel, mult)?, incl))
}

/// The map `A → k ⊕ A` onto the second summand.
pub fn unitalization_inclusion(a: &DGAlgebraNU, b: &AugmentedDGAlgebra) -> Result<ChainMap> {
    let field = a.field();
    ChainMap::from_fn(&a.carrier, b.carrier(), |n| {
        let mut m = Matrix::zeros(field, b.carrier().dim(n), a.carrier.dim(n));
        let off = b.carrier().dim(n) - a.carrier.dim(n);
        m.set_block(off, 0, &Matrix::identity(field, a.carrier.dim(n)));
        m
    })
}

/// Desk check of the homotopy content of `cok: Alg^nu → Alg_{k//k}` being an
/// equivalence for `A`: with `j: A → k ⊕ A`, the cofiber of `j` is `k[0]`
/// up to quasi-isomorphism and `j → hofib(hocofib j)` is a weak equivalence.
pub fn main_theorem_check(a: &DGAlgebraNU) -> Report {
    let mut report = Report::new("main-theorem");
    for c in a.checks() {
        report.push(Check { name: format!("input.{}", c.name), ..c });
    }
    if !report.passed() {
        return report;
    }
    let b = match dg_unitalize(a) {
        Ok(b) => b,
        Err(e) => {
            report.push(Check::fail("unitalize", e.to_string()));
            return report;
        }
    };
    for c in b.checks() {
        report.push(Check { name: format!("unitalized.{}", c.name), ..c });
    }
    report.push(match dg_augmentation_kernel(&b) {
        Ok((k, _)) => Check::from_bool("roundtrip.kernel_equals_input", k == *a, || {
            "kernel of ε differs from A".into()
        }),
        Err(e) => Check::fail("roundtrip.kernel_equals_input", e.to_string()),
    });
    let outcome = (|| -> Result<()> {
        let j = unitalization_inclusion(a, &b)?;
        let c = cone(&j)?;
        let field = a.field();
        let k0 = ChainComplex::unit(field);
        let eps0 = b.eps.component(0);
        let to_k = ChainMap::from_fn(&c.complex, &k0, |n| {
            let mut m = Matrix::zeros(field, k0.dim(n), c.complex.dim(n));
            if n == 0 {
                m.set_block(0, a.carrier.dim(-1), &eps0);
            }
            m
        })?;
        let homology: Vec<String> = c
            .complex
            .homology()
            .into_iter()
            .filter(|&(_, h)| h > 0)
            .map(|(n, h)| format!("H_{n}={h}"))
            .collect();
        report.push(Check::from_bool(
            "hocofib.homology_is_k0",
            homology == ["H_0=1"],
            || homology.join(" "),
        ));
        report.push(Check::from_bool("hocofib.quasi_iso_to_k0", is_quasi_iso(&to_k)?, || {
            "[0, ε]: cone(j) → k[0] is not a quasi-isomorphism".into()
        }));
        report.push(Check::from_bool("unit.arrow_weq", stable_unit_check(&j)?, || {
            "j → hofib(hocofib j) is not a weak equivalence".into()
        }));
        report.push(Check::from_bool("counit.arrow_weq", stable_counit_check(&c.incl)?, || {
            "hocofib(hofib(k⊕A → cone j)) → (k⊕A → cone j) is not a weak equivalence".into()
        }));
        Ok(())
    })();
    if let Err(e) = outcome {
        report.push(Check::fail("homotopy", e.to_string()));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unitalize;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn exterior_algebra_on_degree_one_generator() {
        let a = DGAlgebraNU::square_zero(q(), 1, 1);
        let b = dg_unitalize(&a).unwrap();
        assert_eq!(b.carrier().dim(0), 1);
        assert_eq!(b.carrier().dim(1), 1);
        // x·x lands in degree 2, which is zero.
        assert_eq!(b.carrier().dim(2), 0);
        assert!(b.checks().iter().all(|c| c.passed));
    }

    #[test]
    fn zero_algebra_unitalizes_to_base_field() {
        let a = DGAlgebraNU::square_zero(q(), 0, 0);
        let b = dg_unitalize(&a).unwrap();
        assert_eq!(b.carrier(), &ChainComplex::unit(q()));
        assert_eq!(b.base().mult.component(0), Matrix::identity(q(), 1));
    }

    #[test]
    fn degree_zero_agrees_with_ungraded_unitalization() {
        let a = NonUnitalAlgebra::new(q(), 2, vec![(0, 0, 1, q().one())]).unwrap();
        let b = dg_unitalize(&DGAlgebraNU::from_algebra(&a)).unwrap();
        assert_eq!(b.base().mult.component(0), unitalize(&a).unwrap().base().mult_matrix());
    }

    #[test]
    fn kernel_roundtrip_is_strict() {
        let a = DGAlgebraNU::square_zero(q(), 1, 2);
        let (k, _) = dg_augmentation_kernel(&dg_unitalize(&a).unwrap()).unwrap();
        assert_eq!(k, a);
    }

    #[test]
    fn broken_associativity_names_a_triple() {
        let broken = NonUnitalAlgebra::new(q(), 2, vec![(0, 1, 1, q().one())]).unwrap();
        let a = DGAlgebraNU::from_algebra(&broken);
        let w = a.associativity_defect().unwrap().unwrap();
        assert_eq!(w, "degree 0, basis triple (0:0, 0:0, 0:1), coordinate 1");
        assert!(matches!(dg_unitalize(&a), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn main_theorem_examples() {
        for a in [
            DGAlgebraNU::square_zero(q(), 0, 1),
            DGAlgebraNU::square_zero(q(), 0, 0),
            DGAlgebraNU::square_zero(q(), 1, 1),
        ] {
            let r = main_theorem_check(&a);
            assert!(r.passed(), "{r}");
        }
    }
}
