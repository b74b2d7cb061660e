//! Finite-dimensional algebras given by structure constants, augmentations,
//! and the equivalence between non-unital algebras and augmented algebras
//! given by unitalization `A ↦ k ⊕ A` and the augmentation kernel.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{shape, Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, factor_through_kernel, kernel_basis};
use crate::matrix::Matrix;
use crate::report::Check;

/// An associative algebra without assumed unit: `eᵢ·eⱼ = Σₖ c[i][j][k] eₖ`.
///
/// Construction only checks index bounds; associativity is reported by
/// [`NonUnitalAlgebra::associativity_violations`] so that broken tables can
/// be inspected rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnitalAlgebra {
    field: Field,
    dim: usize,
    mult: BTreeMap<(usize, usize, usize), Scalar>,
}

/// A failing basis triple `(eᵢeⱼ)eₗ ≠ eᵢ(eⱼeₗ)`, first differing coordinate `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityViolation {
    pub triple: (usize, usize, usize),
    pub coordinate: usize,
    pub left: Scalar,
    pub right: Scalar,
}

impl NonUnitalAlgebra {
    /// Entries are `(i, j, k, c)`; repeated indices accumulate.
    pub fn new(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut mult: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(shape(format!(
                    "structure constant ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            let c = field.reduce(c)?;
            let slot = mult.entry((i, j, k)).or_insert_with(Scalar::zero);
            *slot = field.add(slot, &c);
        }
        mult.retain(|_, v| !v.is_zero());
        Ok(NonUnitalAlgebra { field, dim, mult })
    }

    /// The algebra whose multiplication `A ⊗ A → A` is the given
    /// `dim × dim²` matrix.
    pub fn from_mult_matrix(m: &Matrix) -> Result<Self> {
        let dim = m.rows();
        if m.cols() != dim * dim {
            return Err(shape(format!(
                "multiplication matrix is {}x{}, expected {dim}x{}",
                m.rows(),
                m.cols(),
                dim * dim
            )));
        }
        let mut entries = Vec::new();
        for k in 0..dim {
            for c in 0..dim * dim {
                let v = m.get(k, c);
                if !v.is_zero() {
                    entries.push((c / dim, c % dim, k, v.clone()));
                }
            }
        }
        Self::new(m.field(), dim, entries)
    }

    /// The zero algebra structure on `k^n`.
    pub fn zero_product(field: Field, dim: usize) -> Self {
        NonUnitalAlgebra {
            field,
            dim,
            mult: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.mult.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.mult.get(&(i, j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(_, _, k), v) in self.mult.range((i, j, 0)..(i, j + 1, 0)) {
            out[k] = v.clone();
        }
        out
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(i, j, k), c) in &self.mult {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] = f.add(&out[k], &f.mul(c, &f.mul(&x[i], &y[j])));
        }
        out
    }

    /// `A ⊗ A → A` as a `dim × dim²` matrix in Kronecker ordering.
    pub fn mult_matrix(&self) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n, n * n);
        for (&(i, j, k), v) in &self.mult {
            m.set(k, i * n + j, v.clone());
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Exhaustive check over all `dim³` basis triples.
    pub fn associativity_violations(&self) -> Vec<AssociativityViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for l in 0..n {
                    let left = self.product(&ij, &self.basis_vector(l));
                    let jl = self.basis_product(j, l);
                    let right = self.product(&self.basis_vector(i), &jl);
                    if let Some(k) = (0..n).find(|&k| left[k] != right[k]) {
                        out.push(AssociativityViolation {
                            triple: (i, j, l),
                            coordinate: k,
                            left: left[k].clone(),
                            right: right[k].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn check_associative(&self) -> Result<()> {
        match self.associativity_violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::NotAssociative(format!(
                "basis triple ({}, {}, {})",
                v.triple.0, v.triple.1, v.triple.2
            ))),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn associativity_check(&self) -> Check {
        let violations = self.associativity_violations();
        Check::from_defect(
            "associativity",
            violations.first().map(|v| {
                format!(
                    "triple ({}, {}, {}) coordinate {}: {} vs {} ({} violating triples)",
                    v.triple.0,
                    v.triple.1,
                    v.triple.2,
                    v.coordinate,
                    self.field.format_scalar(&v.left),
                    self.field.format_scalar(&v.right),
                    violations.len()
                )
            }),
        )
    }

    /// Structure constants in the basis given by the columns of `g`.
    pub fn change_basis(&self, g: &Matrix) -> Result<NonUnitalAlgebra> {
        let ginv = linalg::inverse(g)
            .ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let m = &(&ginv * &self.mult_matrix()) * &linalg::kronecker(g, g)?;
        NonUnitalAlgebra::from_mult_matrix(&m)
    }
}

/// An algebra with a two-sided unit `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalAlgebra {
    pub base: NonUnitalAlgebra,
    pub unit: Vec<Scalar>,
}

impl UnitalAlgebra {
    pub fn new(base: NonUnitalAlgebra, unit: Vec<Scalar>) -> Result<Self> {
        if unit.len() != base.dim() {
            return Err(shape(format!(
                "unit has {} coordinates in dimension {}",
                unit.len(),
                base.dim()
            )));
        }
        Ok(UnitalAlgebra { base, unit })
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// First basis index `i` with `e·eᵢ ≠ eᵢ` or `eᵢ·e ≠ eᵢ`.
    pub fn unit_defect(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| {
            let ei = self.base.basis_vector(i);
            self.base.product(&self.unit, &ei) != ei || self.base.product(&ei, &self.unit) != ei
        })
    }

    pub fn unit_check(&self) -> Check {
        Check::from_defect(
            "unit",
            self.unit_defect()
                .map(|i| format!("unit law fails on basis element {i}")),
        )
    }

    pub fn unit_column(&self) -> Matrix {
        Matrix::column(self.field(), self.unit.clone())
    }
}

/// A unital algebra with an algebra map `ε: A → k` split by the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedAlgebra {
    pub alg: UnitalAlgebra,
    pub eps: Vec<Scalar>,
}

impl AugmentedAlgebra {
    pub fn new(alg: UnitalAlgebra, eps: Vec<Scalar>) -> Result<Self> {
        if eps.len() != alg.dim() {
            return Err(shape(format!(
                "augmentation has {} coordinates in dimension {}",
                eps.len(),
                alg.dim()
            )));
        }
        Ok(AugmentedAlgebra { alg, eps })
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn base(&self) -> &NonUnitalAlgebra {
        &self.alg.base
    }

    pub fn eps_row(&self) -> Matrix {
        Matrix::row(self.field(), self.eps.clone())
    }

    pub fn eval_eps(&self, x: &[Scalar]) -> Scalar {
        let f = self.field();
        self.eps
            .iter()
            .zip(x)
            .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// `ε(e) ≠ 1` or the first basis pair with `ε(eᵢeⱼ) ≠ ε(eᵢ)ε(eⱼ)`.
    pub fn augmentation_defect(&self) -> Option<String> {
        let f = self.field();
        if self.eval_eps(&self.alg.unit) != f.one() {
            return Some("ε(unit) ≠ 1".into());
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = self.eval_eps(&self.base().basis_product(i, j));
                let rhs = f.mul(&self.eps[i], &self.eps[j]);
                if lhs != rhs {
                    return Some(format!("ε(e{i}·e{j}) ≠ ε(e{i})ε(e{j})"));
                }
            }
        }
        None
    }

    pub fn checks(&self) -> Vec<Check> {
        vec![
            self.base().associativity_check(),
            self.alg.unit_check(),
            Check::from_defect("augmentation", self.augmentation_defect()),
        ]
    }

    /// The same algebra in the basis given by the columns of `g`, together
    /// with the isomorphism `g` from the new presentation to `self`.
    pub fn change_basis(&self, g: &Matrix) -> Result<(AugmentedAlgebra, AlgebraMorphism)> {
        let ginv = linalg::inverse(g)
            .ok_or_else(|| Error::Invalid("change of basis is not invertible".into()))?;
        let base = self.base().change_basis(g)?;
        let unit = ginv.apply(&self.alg.unit);
        let eps = (&self.eps_row() * g).row_slice(0).to_vec();
        let new = AugmentedAlgebra::new(UnitalAlgebra::new(base, unit)?, eps)?;
        let iso = AlgebraMorphism::new(new.base().clone(), self.base().clone(), g.clone())?;
        Ok((new, iso))
    }
}

/// A linear map between algebras, `matrix: src → dst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub src: NonUnitalAlgebra,
    pub dst: NonUnitalAlgebra,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(src: NonUnitalAlgebra, dst: NonUnitalAlgebra, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != dst.dim() || matrix.cols() != src.dim() {
            return Err(shape(format!(
                "{}x{} matrix between algebras of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                src.dim(),
                dst.dim()
            )));
        }
        Ok(AlgebraMorphism { src, dst, matrix })
    }

    /// First basis pair `(i, j)` with `φ(eᵢeⱼ) ≠ φ(eᵢ)φ(eⱼ)`.
    pub fn multiplicativity_defect(&self) -> Option<(usize, usize)> {
        let n = self.src.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|i| self.matrix.column_vec(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.matrix.apply(&self.src.basis_product(i, j));
                let rhs = self.dst.product(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_invertible(&self) -> bool {
        linalg::is_iso(&self.matrix)
    }

    /// Checks that `self` is an isomorphism of non-unital algebras.
    pub fn nonunital_iso_checks(&self) -> Vec<Check> {
        vec![
            Check::from_bool("invertible", self.is_invertible(), || {
                format!(
                    "rank {} for a {}x{} matrix",
                    linalg::rank(&self.matrix),
                    self.matrix.rows(),
                    self.matrix.cols()
                )
            }),
            Check::from_defect(
                "multiplicative",
                self.multiplicativity_defect()
                    .map(|(i, j)| format!("basis pair ({i}, {j})")),
            ),
        ]
    }

    /// Checks that `self` is an isomorphism of augmented algebras `src → dst`.
    pub fn augmented_iso_checks(
        &self,
        src: &AugmentedAlgebra,
        dst: &AugmentedAlgebra,
    ) -> Vec<Check> {
        let mut checks = self.nonunital_iso_checks();
        let unit_image = self.matrix.apply(&src.alg.unit);
        checks.push(Check::from_bool("unital", unit_image == dst.alg.unit, || {
            "image of the unit differs from the unit".into()
        }));
        let pulled = &dst.eps_row() * &self.matrix;
        checks.push(Check::from_defect(
            "augmentation-preserving",
            pulled
                .first_difference(&src.eps_row())
                .map(|(_, c)| format!("ε differs on basis element {c}")),
        ));
        checks
    }
}

/// `k ⊕ A` with `(m, a)(n, b) = (mn, na + mb + ab)`; basis `e₀` (the unit)
/// followed by the basis of `A`, and `ε` the `e₀`-coordinate.
pub fn unitalize(a: &NonUnitalAlgebra) -> Result<AugmentedAlgebra> {
    a.check_associative()?;
    let f = a.field();
    let n = a.dim();
    let one = f.one();
    let mut entries = vec![(0, 0, 0, one.clone())];
    for i in 1..=n {
        entries.push((0, i, i, one.clone()));
        entries.push((i, 0, i, one.clone()));
    }
    for (i, j, k, c) in a.structure_constants() {
        entries.push((i + 1, j + 1, k + 1, c.clone()));
    }
    let base = NonUnitalAlgebra::new(f, n + 1, entries)?;
    let mut unit = vec![f.zero(); n + 1];
    unit[0] = one;
    let eps = unit.clone();
    AugmentedAlgebra::new(UnitalAlgebra::new(base, unit)?, eps)
}

/// `Ker(ε)` with the restricted multiplication and its inclusion into `B`.
pub fn augmentation_kernel(b: &AugmentedAlgebra) -> Result<(NonUnitalAlgebra, AlgebraMorphism)> {
    let incl = kernel_basis(&b.eps_row());
    let kernel = restrict_to_subspace(b.base(), &incl)?;
    let morphism = AlgebraMorphism::new(kernel.clone(), b.base().clone(), incl)?;
    Ok((kernel, morphism))
}

/// The multiplication of `a` restricted to the span of the columns of `basis`,
/// which must be closed under products.
pub(crate) fn restrict_to_subspace(a: &NonUnitalAlgebra, basis: &Matrix) -> Result<NonUnitalAlgebra> {
    let d = basis.cols();
    let cols: Vec<Vec<Scalar>> = (0..d).map(|i| basis.column_vec(i)).collect();
    let mut products = Matrix::zeros(a.field(), a.dim(), d * d);
    for i in 0..d {
        for j in 0..d {
            let p = a.product(&cols[i], &cols[j]);
            for (r, v) in p.into_iter().enumerate() {
                products.set(r, i * d + j, v);
            }
        }
    }
    let coords = factor_through_kernel(basis, &products).map_err(|_| {
        Error::Invalid("subspace is not closed under multiplication".into())
    })?;
    NonUnitalAlgebra::from_mult_matrix(&coords)
}

/// The identity-on-coordinates map `A → Ker(ε_{k⊕A})`.
pub fn roundtrip_nu(a: &NonUnitalAlgebra) -> Result<AlgebraMorphism> {
    let (kernel, _) = augmentation_kernel(&unitalize(a)?)?;
    AlgebraMorphism::new(a.clone(), kernel, Matrix::identity(a.field(), a.dim()))
}

/// The map `k ⊕ Ker(ε) → B`, `(m, a) ↦ m·e + a`.
pub fn roundtrip_aug(b: &AugmentedAlgebra) -> Result<(AugmentedAlgebra, AlgebraMorphism)> {
    let (kernel, incl) = augmentation_kernel(b)?;
    let rebuilt = unitalize(&kernel)?;
    let matrix = b.alg.unit_column().hstack(&incl.matrix)?;
    let m = AlgebraMorphism::new(rebuilt.base().clone(), b.base().clone(), matrix)?;
    Ok((rebuilt, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn s(v: i64) -> Scalar {
        q().from_i64(v)
    }

    /// k[x]/(x³) written out from polynomial arithmetic.
    fn cubic_truncation() -> AugmentedAlgebra {
        let mut entries = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i + j < 3 {
                    entries.push((i, j, i + j, s(1)));
                }
            }
        }
        let base = NonUnitalAlgebra::new(q(), 3, entries).unwrap();
        let alg = UnitalAlgebra::new(base, vec![s(1), s(0), s(0)]).unwrap();
        AugmentedAlgebra::new(alg, vec![s(1), s(0), s(0)]).unwrap()
    }

    /// k × k with idempotent basis and ε the first projection.
    fn split_pair() -> AugmentedAlgebra {
        let base = NonUnitalAlgebra::new(q(), 2, [(0, 0, 0, s(1)), (1, 1, 1, s(1))]).unwrap();
        let alg = UnitalAlgebra::new(base, vec![s(1), s(1)]).unwrap();
        AugmentedAlgebra::new(alg, vec![s(1), s(0)]).unwrap()
    }

    #[test]
    fn associativity_examples() {
        assert!(NonUnitalAlgebra::zero_product(q(), 3).associativity_violations().is_empty());
        assert!(cubic_truncation().base().associativity_violations().is_empty());

        // e0·e1 = e1 alone: (e0e0)e1 = 0 but e0(e0e1) = e1, and no other triple fails.
        let broken = NonUnitalAlgebra::new(q(), 2, [(0, 1, 1, s(1))]).unwrap();
        let v = broken.associativity_violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].triple, (0, 0, 1));
        assert_eq!(v[0].coordinate, 1);
        assert_eq!(
            unitalize(&broken),
            Err(Error::NotAssociative("basis triple (0, 0, 1)".into()))
        );
    }

    #[test]
    fn unitalize_empty_algebra_is_the_field() {
        let b = unitalize(&NonUnitalAlgebra::zero_product(q(), 0)).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.eps, vec![s(1)]);
        assert_eq!(b.base().basis_product(0, 0), vec![s(1)]);
    }

    #[test]
    fn unitalize_square_zero_line_is_dual_numbers() {
        let b = unitalize(&NonUnitalAlgebra::zero_product(q(), 1)).unwrap();
        // k[x]/(x²): 1·1 = 1, 1·x = x·1 = x, x·x = 0.
        let expected = NonUnitalAlgebra::new(
            q(),
            2,
            [(0, 0, 0, s(1)), (0, 1, 1, s(1)), (1, 0, 1, s(1))],
        )
        .unwrap();
        assert_eq!(b.base(), &expected);
        assert_eq!(b.eps, vec![s(1), s(0)]);
        assert!(b.checks().iter().all(|c| c.passed));
    }

    #[test]
    fn unitalize_matches_formula() {
        // A = k[x]/(x³) restricted to (x, x²), i.e. x·x = x², rest zero.
        let a = NonUnitalAlgebra::new(q(), 2, [(0, 0, 1, s(1))]).unwrap();
        let b = unitalize(&a).unwrap();
        let (m, n) = (s(3), s(-2));
        let (av, bv) = (vec![s(1), s(5)], vec![s(-4), s(2)]);
        let lhs = b.base().product(
            &[vec![m.clone()], av.clone()].concat(),
            &[vec![n.clone()], bv.clone()].concat(),
        );
        let ab = a.product(&av, &bv);
        let rhs_a: Vec<Scalar> = (0..2).map(|i| &n * &av[i] + &m * &bv[i] + &ab[i]).collect();
        assert_eq!(lhs, [vec![&m * &n], rhs_a].concat());
    }

    #[test]
    fn kernel_of_unitalization_is_original() {
        let a = NonUnitalAlgebra::new(q(), 2, [(0, 0, 1, s(1))]).unwrap();
        let (k, incl) = augmentation_kernel(&unitalize(&a).unwrap()).unwrap();
        assert_eq!(k, a);
        assert!(incl.multiplicativity_defect().is_none());
    }

    #[test]
    fn kernel_examples() {
        let dual = unitalize(&NonUnitalAlgebra::zero_product(q(), 1)).unwrap();
        let (k, _) = augmentation_kernel(&dual).unwrap();
        assert_eq!(k, NonUnitalAlgebra::zero_product(q(), 1));

        let (k, incl) = augmentation_kernel(&split_pair()).unwrap();
        assert_eq!(incl.matrix, Matrix::from_i64(q(), 2, 1, &[0, 1]));
        assert_eq!(k.basis_product(0, 0), vec![s(1)]);
    }

    #[test]
    fn roundtrip_examples() {
        let sq = NonUnitalAlgebra::zero_product(q(), 2);
        let r = roundtrip_nu(&sq).unwrap();
        assert_eq!(r.matrix, Matrix::identity(q(), 2));
        assert!(r.nonunital_iso_checks().iter().all(|c| c.passed));

        let b = split_pair();
        let (rebuilt, m) = roundtrip_aug(&b).unwrap();
        // columns (e, y) = ((1, 1), (0, 1))
        assert_eq!(m.matrix, Matrix::from_i64(q(), 2, 2, &[1, 0, 1, 1]));
        assert!(m.augmented_iso_checks(&rebuilt, &b).iter().all(|c| c.passed));

        let c = cubic_truncation();
        let (rebuilt, m) = roundtrip_aug(&c).unwrap();
        assert!(m.augmented_iso_checks(&rebuilt, &c).iter().all(|c| c.passed));
    }

    #[test]
    fn unit_laws_and_section() {
        let b = cubic_truncation();
        assert!(b.alg.unit_defect().is_none());
        assert_eq!(b.eval_eps(&b.alg.unit), s(1));
        let bad = UnitalAlgebra::new(b.base().clone(), vec![s(0), s(1), s(0)]).unwrap();
        assert_eq!(bad.unit_defect(), Some(0));
    }

    #[test]
    fn change_of_basis_is_an_isomorphism() {
        let b = cubic_truncation();
        let g = Matrix::from_i64(q(), 3, 3, &[1, 0, 0, 1, 1, 0, 2, -1, 1]);
        let (nb, iso) = b.change_basis(&g).unwrap();
        assert!(nb.checks().iter().all(|c| c.passed));
        assert!(iso.augmented_iso_checks(&nb, &b).iter().all(|c| c.passed));
    }
}
