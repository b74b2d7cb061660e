//! Smith ideals in vector spaces: monoid objects `j: I → R` of the arrow
//! category under the pushout product.
//!
//! A two-sided ideal `I ⊆ R` of a unital algebra gives one: `μ₁` is the
//! multiplication of `R`, `μ₀` is the induced multiplication on
//! `(I⊗R) ⊔_{I⊗I} (R⊗I)`, and `η` picks out the unit of `R`. Unit-cokernel
//! Smith ideals correspond to augmented algebras through `cok` and `ker`.

use crate::algebra::{AugmentedAlgebra, NonUnitalAlgebra, UnitalAlgebra};
use crate::arrow::{
    self, adjunction_unit, box_morphism, box_symmetry, cube_injections_left,
    cube_injections_right, jointly_epi, pushout_product, unit_box, ArrowMorphism, ArrowObject,
};
use crate::error::{shape, Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, factor_through_kernel, kernel_basis, kronecker};
use crate::matrix::Matrix;
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithIdealVect {
    /// `I → R`
    pub j: ArrowObject,
    /// `j □ j → j`
    pub mu: ArrowMorphism,
    /// `(0 → k) → j`
    pub eta: ArrowMorphism,
}

impl SmithIdealVect {
    pub fn field(&self) -> Field {
        self.j.field()
    }

    /// `R` with multiplication `μ₁` and unit `η₁`.
    pub fn ring(&self) -> Result<UnitalAlgebra> {
        let base = NonUnitalAlgebra::from_mult_matrix(&self.mu.comp1)?;
        UnitalAlgebra::new(base, self.eta.comp1.column_vec(0))
    }
}

/// The Smith ideal of a two-sided ideal spanned by the columns of `ideal`.
pub fn smith_from_ideal(ring: &UnitalAlgebra, ideal: &Matrix) -> Result<SmithIdealVect> {
    let field = ring.field();
    if ideal.rows() != ring.dim() {
        return Err(shape("ideal basis lives in a space of the wrong dimension"));
    }
    if !linalg::is_mono(ideal) {
        return Err(Error::Invalid("ideal basis is not linearly independent".into()));
    }
    let base = &ring.base;
    for a in 0..ideal.cols() {
        let x = ideal.column_vec(a);
        for b in 0..ring.dim() {
            let e = base.basis_vector(b);
            for p in [base.product(&x, &e), base.product(&e, &x)] {
                if factor_through_kernel(ideal, &Matrix::column(field, p)).is_err() {
                    return Err(Error::Invalid(format!(
                        "ideal generator {a} times basis element {b} leaves the ideal"
                    )));
                }
            }
        }
    }
    let j = ArrowObject::new(ideal.clone());
    let mult = base.mult_matrix();
    let jj = pushout_product(&j, &j)?;
    let mu0 = factor_through_kernel(j.map(), &(&mult * jj.arrow.map()))?;
    let mu = ArrowMorphism::new(jj.arrow, j.clone(), mu0, mult)?;
    let eta = ArrowMorphism::new(
        unit_box(field),
        j.clone(),
        Matrix::zeros(field, ideal.cols(), 0),
        ring.unit_column(),
    )?;
    Ok(SmithIdealVect { j, mu, eta })
}

/// `Ker(ε) ↪ B` as a Smith ideal.
pub fn smith_from_augmented(b: &AugmentedAlgebra) -> Result<SmithIdealVect> {
    let kernel = kernel_basis(&b.eps_row());
    // Ideal closure: ε(xy) = 0 whenever x or y lies in Ker(ε).
    for a in 0..kernel.cols() {
        let x = kernel.column_vec(a);
        for i in 0..b.dim() {
            let e = b.base().basis_vector(i);
            let zero = b.field().zero();
            if b.eval_eps(&b.base().product(&x, &e)) != zero
                || b.eval_eps(&b.base().product(&e, &x)) != zero
            {
                return Err(Error::Invalid(format!(
                    "ε does not vanish on kernel vector {a} times basis element {i}"
                )));
            }
        }
    }
    smith_from_ideal(&b.alg, &kernel)
}

/// `smith_from_augmented(unitalize(A))`.
pub fn nu_algebra_as_smith(a: &NonUnitalAlgebra) -> Result<SmithIdealVect> {
    smith_from_augmented(&crate::algebra::unitalize(a)?)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SmithCheckOptions {
    /// Also require `μ ∘ swap = μ`.
    pub commutative: bool,
}

fn entry_witness(what: &str, diff: Option<(usize, usize)>) -> Option<String> {
    diff.map(|(r, c)| format!("{what} differs at entry ({r}, {c})"))
}

/// Names the basis triple `(a, b, c)` of `R⊗R⊗R` at column `col`.
fn triple_witness(dim: usize, diff: Option<(usize, usize)>) -> Option<String> {
    diff.map(|(r, col)| {
        let (a, b, c) = (col / (dim * dim), (col / dim) % dim, col % dim);
        format!("basis triple ({a}, {b}, {c}), output coordinate {r}")
    })
}

/// Exact verification of the monoid axioms in `Ar^□`.
///
/// Associativity on the domain component is compared after precomposition
/// with the three cube injections, which are checked to be jointly
/// surjective on both bracketings.
pub fn verify_smith_ideal(s: &SmithIdealVect, opts: SmithCheckOptions) -> Report {
    let mut report = Report::new("smith-ideal");
    let field = s.field();
    let j = &s.j;
    let rdim = j.cod_dim();
    let id_j = ArrowMorphism::identity(j);

    let jj = match pushout_product(j, j) {
        Ok(p) => p,
        Err(e) => {
            report.push(Check::fail("mu.source", e.to_string()));
            return report;
        }
    };
    let shapes_ok = s.mu.src == jj.arrow
        && &s.mu.dst == j
        && s.eta.src == unit_box(field)
        && &s.eta.dst == j;
    report.push(Check::from_bool("shapes", shapes_ok, || {
        "μ must be j□j → j and η must be (0→k) → j".into()
    }));
    if !shapes_ok {
        return report;
    }
    report.push(Check::from_defect(
        "mu.square",
        entry_witness("j·μ₀ vs μ₁·(j□j)", s.mu.square_defect()),
    ));
    report.push(Check::from_defect(
        "eta.square",
        entry_witness("j·η₀ vs η₁·0", s.eta.square_defect()),
    ));

    // Unit laws; both unitors are identities because (0→k)□j = j = j□(0→k).
    for (name, lifted) in [
        ("unit.left", box_morphism(&s.eta, &id_j)),
        ("unit.right", box_morphism(&id_j, &s.eta)),
    ] {
        match lifted.and_then(|l| s.mu.compose(&l)) {
            Ok(m) => {
                let id = ArrowMorphism::identity(j);
                report.push(Check::from_defect(
                    format!("{name}.comp0"),
                    m.comp0
                        .first_difference(&id.comp0)
                        .map(|(r, c)| format!("ideal basis element {c}, coordinate {r}")),
                ));
                report.push(Check::from_defect(
                    format!("{name}.comp1"),
                    m.comp1
                        .first_difference(&id.comp1)
                        .map(|(r, c)| format!("ring basis element {c}, coordinate {r}")),
                ));
            }
            Err(e) => report.push(Check::fail(name, format!("μ∘(η□id) undefined: {e}"))),
        }
    }

    let mu1 = &s.mu.comp1;
    let id_r = Matrix::identity(field, rdim);
    let left1 = mu1 * &kronecker(mu1, &id_r).expect("same field");
    let right1 = mu1 * &kronecker(&id_r, mu1).expect("same field");
    report.push(Check::from_defect(
        "assoc.comp1",
        triple_witness(rdim, left1.first_difference(&right1)),
    ));

    let assoc0 = || -> Result<Vec<Check>> {
        let (_, inj_l) = cube_injections_left(j, j, j)?;
        let (_, inj_r) = cube_injections_right(j, j, j)?;
        let left = s.mu.compose(&box_morphism(&s.mu, &id_j)?)?;
        let right = s.mu.compose(&box_morphism(&id_j, &s.mu)?)?;
        let mut checks = vec![
            Check::from_bool("assoc.cube_epi.left", jointly_epi(&inj_l), || {
                "cube injections miss part of dom((j□j)□j)".into()
            }),
            Check::from_bool("assoc.cube_epi.right", jointly_epi(&inj_r), || {
                "cube injections miss part of dom(j□(j□j))".into()
            }),
        ];
        let faces = ["I⊗R⊗R", "R⊗I⊗R", "R⊗R⊗I"];
        for (k, face) in faces.iter().enumerate() {
            let l = &left.comp0 * &inj_l[k];
            let r = &right.comp0 * &inj_r[k];
            checks.push(Check::from_defect(
                format!("assoc.comp0.{face}"),
                l.first_difference(&r)
                    .map(|(row, col)| format!("{face} basis element {col}, coordinate {row}")),
            ));
        }
        Ok(checks)
    };
    match assoc0() {
        Ok(checks) => checks.into_iter().for_each(|c| report.push(c)),
        Err(e) => report.push(Check::fail("assoc.comp0", format!("μ□id undefined: {e}"))),
    }

    if opts.commutative {
        let comm = box_symmetry(j, j).and_then(|sym| s.mu.compose(&sym));
        match comm {
            Ok(m) => report.push(Check::from_defect(
                "commutative",
                entry_witness("μ∘swap vs μ (comp1)", m.comp1.first_difference(&s.mu.comp1))
                    .or_else(|| {
                        entry_witness("μ∘swap vs μ (comp0)", m.comp0.first_difference(&s.mu.comp0))
                    }),
            )),
            Err(e) => report.push(Check::fail("commutative", e.to_string())),
        }
    }
    report
}

/// The augmentation `R → k` induced by `cok(j)` when the cokernel is
/// one-dimensional and the induced functional is multiplicative and split by
/// the unit.
pub fn unit_cokernel_augmentation(s: &SmithIdealVect) -> Result<Vec<Scalar>> {
    let field = s.field();
    let q = arrow::cok(&s.j);
    if q.cod_dim() != 1 {
        return Err(Error::NotUnitCokernel(format!(
            "cokernel has dimension {}",
            q.cod_dim()
        )));
    }
    let ring = s.ring()?;
    let qe = q.map().apply(&ring.unit)[0].clone();
    let Some(inv) = field.inv(&qe) else {
        return Err(Error::NotUnitCokernel("unit maps to zero in the cokernel".into()));
    };
    let eps: Vec<Scalar> = q.map().row_slice(0).iter().map(|v| field.mul(v, &inv)).collect();
    let aug = AugmentedAlgebra::new(ring, eps.clone())?;
    if let Some(d) = aug.augmentation_defect() {
        return Err(Error::NotUnitCokernel(format!("cokernel map is not an algebra map: {d}")));
    }
    Ok(eps)
}

pub fn is_unit_cokernel(s: &SmithIdealVect) -> bool {
    unit_cokernel_augmentation(s).is_ok()
}

/// `R` with unit from `η` and augmentation from `cok(j)`.
pub fn cok_smith(s: &SmithIdealVect) -> Result<AugmentedAlgebra> {
    let eps = unit_cokernel_augmentation(s)?;
    AugmentedAlgebra::new(s.ring()?, eps)
}

/// Checks that `alpha: s.j → t.j` is a morphism of monoids in `Ar^□`.
pub fn smith_morphism_checks(
    s: &SmithIdealVect,
    t: &SmithIdealVect,
    alpha: &ArrowMorphism,
) -> Vec<Check> {
    let mut checks = vec![Check::from_defect(
        "square",
        entry_witness("α square", alpha.square_defect()),
    )];
    let mult = box_morphism(alpha, alpha).and_then(|aa| {
        let l = alpha.compose(&s.mu)?;
        let r = t.mu.compose(&aa)?;
        Ok((l, r))
    });
    match mult {
        Ok((l, r)) => checks.push(Check::from_defect(
            "multiplicative",
            entry_witness("α∘μ vs μ∘(α□α) comp0", l.comp0.first_difference(&r.comp0))
                .or_else(|| entry_witness("α∘μ vs μ∘(α□α) comp1", l.comp1.first_difference(&r.comp1))),
        )),
        Err(e) => checks.push(Check::fail("multiplicative", e.to_string())),
    }
    match alpha.compose(&s.eta) {
        Ok(l) => checks.push(Check::from_defect(
            "unital",
            entry_witness("α∘η vs η", l.comp1.first_difference(&t.eta.comp1)),
        )),
        Err(e) => checks.push(Check::fail("unital", e.to_string())),
    }
    checks
}

/// The comparison `s.j → t.j` that is the identity on `R`, when both ideals
/// sit in the same ring with the same image.
pub fn comparison_over_ring(s: &SmithIdealVect, t: &SmithIdealVect) -> Result<ArrowMorphism> {
    if s.j.cod_dim() != t.j.cod_dim() {
        return Err(shape("Smith ideals live in rings of different dimension"));
    }
    let comp0 = factor_through_kernel(t.j.map(), s.j.map())?;
    let comp1 = Matrix::identity(s.field(), s.j.cod_dim());
    ArrowMorphism::new(s.j.clone(), t.j.clone(), comp0, comp1)
}

/// Membership in the localized characterization: a Smith ideal with `j`
/// mono (so `j → im(j)` is invertible) and unit cokernel.
pub fn is_localized_unit_cokernel(s: &SmithIdealVect) -> bool {
    verify_smith_ideal(s, SmithCheckOptions::default()).passed()
        && adjunction_unit(&s.j).is_iso()
        && is_unit_cokernel(s)
}

/// Membership in the kernel-image characterization: `s` is isomorphic, as a
/// monoid in `Ar^□`, to `ker` of an augmented algebra on its own ring.
pub fn is_kernel_image(s: &SmithIdealVect) -> bool {
    let Ok(ring) = s.ring() else { return false };
    if !s.j.is_mono() || s.j.cod_dim() != s.j.dom_dim() + 1 {
        return false;
    }
    // Any augmentation whose kernel is Im(j) is proportional to the functional cutting it out.
    let functional = kernel_basis(&s.j.map().transpose()).transpose();
    let field = s.field();
    let scale = functional.apply(&ring.unit)[0].clone();
    let Some(inv) = field.inv(&scale) else { return false };
    let eps = functional.scale(&inv).row_slice(0).to_vec();
    let Ok(b) = AugmentedAlgebra::new(ring, eps) else { return false };
    if b.augmentation_defect().is_some() || b.alg.unit_defect().is_some() {
        return false;
    }
    let Ok(t) = smith_from_augmented(&b) else { return false };
    let Ok(alpha) = comparison_over_ring(s, &t) else { return false };
    alpha.is_iso() && smith_morphism_checks(s, &t, &alpha).iter().all(|c| c.passed)
}

/// Replaces one entry of `μ₀` (component 0) or `μ₁` (component 1), leaving
/// everything else intact.
pub fn mutate_mu(s: &SmithIdealVect, component: usize, row: usize, col: usize, delta: &Scalar) -> SmithIdealVect {
    let mut out = s.clone();
    let f = s.field();
    let m = if component == 0 {
        &mut out.mu.comp0
    } else {
        &mut out.mu.comp1
    };
    let v = f.add(m.get(row, col), delta);
    m.set(row, col, v);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unitalize;

    fn q() -> Field {
        Field::Rationals
    }

    fn s(v: i64) -> Scalar {
        q().from_i64(v)
    }

    fn truncated(n: usize) -> AugmentedAlgebra {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n - i {
                entries.push((i, j, i + j, s(1)));
            }
        }
        let base = NonUnitalAlgebra::new(q(), n, entries).unwrap();
        let mut unit = vec![s(0); n];
        unit[0] = s(1);
        AugmentedAlgebra::new(UnitalAlgebra::new(base, unit.clone()).unwrap(), unit).unwrap()
    }

    fn split_pair() -> UnitalAlgebra {
        let base = NonUnitalAlgebra::new(q(), 2, [(0, 0, 0, s(1)), (1, 1, 1, s(1))]).unwrap();
        UnitalAlgebra::new(base, vec![s(1), s(1)]).unwrap()
    }

    #[test]
    fn truncated_cubic_ideal_passes() {
        let b = truncated(3);
        let sm = smith_from_augmented(&b).unwrap();
        assert_eq!(sm.j.map(), &Matrix::from_i64(q(), 3, 2, &[0, 0, 1, 0, 0, 1]));
        let r = verify_smith_ideal(&sm, SmithCheckOptions { commutative: true });
        assert!(r.passed(), "{r}");
        assert!(is_unit_cokernel(&sm));
        assert_eq!(cok_smith(&sm).unwrap(), b);
    }

    #[test]
    fn field_gives_the_box_unit() {
        let sm = smith_from_augmented(&truncated(1)).unwrap();
        assert_eq!(sm.j, unit_box(q()));
        assert!(verify_smith_ideal(&sm, SmithCheckOptions::default()).passed());
        assert!(is_unit_cokernel(&sm));
        let b = cok_smith(&sm).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn split_pair_ideal() {
        let ring = split_pair();
        let b = AugmentedAlgebra::new(ring, vec![s(1), s(0)]).unwrap();
        let sm = smith_from_augmented(&b).unwrap();
        assert_eq!(sm.j.map(), &Matrix::from_i64(q(), 2, 1, &[0, 1]));
        assert!(verify_smith_ideal(&sm, SmithCheckOptions::default()).passed());
    }

    #[test]
    fn zero_ideal_in_split_pair_is_not_unit_cokernel() {
        let sm = smith_from_ideal(&split_pair(), &Matrix::zeros(q(), 2, 0)).unwrap();
        assert!(verify_smith_ideal(&sm, SmithCheckOptions::default()).passed());
        assert!(!is_unit_cokernel(&sm));
        assert!(matches!(cok_smith(&sm), Err(Error::NotUnitCokernel(_))));
        assert!(!is_kernel_image(&sm));
        assert!(!is_localized_unit_cokernel(&sm));
    }

    #[test]
    fn corrupted_mu_is_rejected_with_witness() {
        let sm = smith_from_augmented(&truncated(3)).unwrap();
        for (component, row, col) in [(0, 1, 0), (1, 0, 0), (1, 2, 4)] {
            let bad = mutate_mu(&sm, component, row, col, &s(1));
            let r = verify_smith_ideal(&bad, SmithCheckOptions::default());
            assert!(!r.passed());
            assert!(r.failures().all(|c| c.witness.is_some()));
        }
    }

    #[test]
    fn nu_algebra_gives_mono_with_invertible_unit() {
        for a in [
            NonUnitalAlgebra::zero_product(q(), 0),
            NonUnitalAlgebra::zero_product(q(), 1),
            NonUnitalAlgebra::zero_product(q(), 3),
        ] {
            let sm = nu_algebra_as_smith(&a).unwrap();
            assert!(sm.j.is_mono());
            assert!(adjunction_unit(&sm.j).is_iso());
            assert!(verify_smith_ideal(&sm, SmithCheckOptions::default()).passed());
            assert!(is_localized_unit_cokernel(&sm) && is_kernel_image(&sm));
        }
        assert_eq!(
            nu_algebra_as_smith(&NonUnitalAlgebra::zero_product(q(), 0)).unwrap().j,
            unit_box(q())
        );
    }

    #[test]
    fn rescaled_ideal_basis_is_isomorphic_to_kernel_image() {
        let b = truncated(3);
        let k = kernel_basis(&b.eps_row());
        let g = Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1]);
        let sm = smith_from_ideal(&b.alg, &(&k * &g)).unwrap();
        assert!(is_localized_unit_cokernel(&sm));
        assert!(is_kernel_image(&sm));
        let t = smith_from_augmented(&cok_smith(&sm).unwrap()).unwrap();
        let alpha = comparison_over_ring(&sm, &t).unwrap();
        assert!(alpha.is_iso());
        assert!(smith_morphism_checks(&sm, &t, &alpha).iter().all(|c| c.passed));
    }

    #[test]
    fn non_ideal_subspace_is_refused() {
        let ring = unitalize(&NonUnitalAlgebra::zero_product(q(), 1)).unwrap().alg;
        // The unit line of k[x]/(x²) is a subalgebra but not an ideal.
        let sub = Matrix::from_i64(q(), 2, 1, &[1, 0]);
        assert!(smith_from_ideal(&ring, &sub).is_err());
    }
}
