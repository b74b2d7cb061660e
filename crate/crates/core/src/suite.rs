//! Per-instance check batteries shared by the command-line tool and the
//! test suites. Every function returns a [`Report`] naming each identity it
//! tested; seeded variants regenerate their inputs from the seed alone.

use rand::Rng;

use crate::algebra::{augmentation_kernel, roundtrip_aug, roundtrip_nu, unitalize, AugmentedAlgebra, NonUnitalAlgebra};
use crate::arrow::{
    adjoint_transpose_bwd, adjoint_transpose_fwd, adjunction_counit, adjunction_unit, box_symmetry, cok,
    cok_morphism, im, ker, ker_morphism, lax_comparison, pushout_product, strong_monoidal_comparison, unit_box,
    ArrowMorphism, ArrowObject,
};
use crate::chain::{
    cone, degree_zero_map, fiber, is_quasi_iso, is_quasi_iso_by_homology, pushout_product_chain,
    stable_counit_check, stable_unit_check, strict_cokernel, strict_kernel, tensor_map, ChainMap,
};
use crate::corpus::{random_arrow_with, random_chain_map_between, random_complex_with, random_matrix, rng, Seed};
use crate::dg::{dg_augmentation_kernel, dg_unitalize, DGAlgebraNU};
use crate::field::Field;
use crate::linalg::{cokernel_projection, kernel_basis, kronecker};
use crate::matrix::Matrix;
use crate::report::{Check, Report};
use crate::smith::{
    cok_smith, is_kernel_image, is_localized_unit_cokernel, is_unit_cokernel, mutate_mu, nu_algebra_as_smith,
    smith_from_augmented, verify_smith_ideal, SmithCheckOptions, SmithIdealVect,
};
use crate::Result;

fn result_check(name: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    match r {
        Ok(checks) => checks,
        Err(e) => vec![Check::fail(name, e.to_string())],
    }
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> impl Iterator<Item = Check> + '_ {
    checks.into_iter().map(move |c| Check {
        name: format!("{prefix}.{}", c.name),
        ..c
    })
}

fn morphism_equal(name: &str, a: &ArrowMorphism, b: &ArrowMorphism) -> Check {
    let diff = a
        .comp0
        .first_difference(&b.comp0)
        .map(|(r, c)| format!("component 0 differs at entry ({r}, {c})"))
        .or_else(|| {
            a.comp1
                .first_difference(&b.comp1)
                .map(|(r, c)| format!("component 1 differs at entry ({r}, {c})"))
        });
    Check::from_defect(name, diff)
}

fn matrix_equal(name: &str, a: &Matrix, b: &Matrix) -> Check {
    Check::from_defect(
        name,
        a.first_difference(b).map(|(r, c)| format!("entry ({r}, {c})")),
    )
}

/// Both roundtrips `A → Ker(ε_{k⊕A})` and `k ⊕ Ker(ε) → B` for a non-unital
/// algebra and its unitalization.
pub fn roundtrip_nonunital(a: &NonUnitalAlgebra) -> Report {
    let mut report = Report::new("roundtrip");
    report.push(a.associativity_check());
    if !report.passed() {
        return report;
    }
    report.checks.extend(prefixed("nu", result_check("nu", roundtrip_nu(a).map(|m| m.nonunital_iso_checks()))));
    let aug = unitalize(a).and_then(|b| {
        let (rebuilt, m) = roundtrip_aug(&b)?;
        Ok(m.augmented_iso_checks(&rebuilt, &b))
    });
    report.checks.extend(prefixed("aug", result_check("aug", aug)));
    report
}

/// Both roundtrips for an augmented algebra and its augmentation kernel.
pub fn roundtrip_augmented(b: &AugmentedAlgebra) -> Report {
    let mut report = Report::new("roundtrip");
    report.checks.extend(b.checks());
    if !report.passed() {
        return report;
    }
    let aug = roundtrip_aug(b).map(|(rebuilt, m)| m.augmented_iso_checks(&rebuilt, b));
    report.checks.extend(prefixed("aug", result_check("aug", aug)));
    let nu = augmentation_kernel(b).and_then(|(k, _)| roundtrip_nu(&k)).map(|m| m.nonunital_iso_checks());
    report.checks.extend(prefixed("nu", result_check("nu", nu)));
    report
}

/// Smith-ideal checks for `smith_from_augmented(b)`: the monoid axioms, the
/// unit-cokernel condition, `cok_smith` recovering `b`, and agreement of the
/// two characterizations of non-unital algebras.
pub fn smith_augmented(b: &AugmentedAlgebra) -> Report {
    let mut report = Report::new("smith-check");
    let s = match smith_from_augmented(b) {
        Ok(s) => s,
        Err(e) => {
            report.push(Check::fail("build", e.to_string()));
            return report;
        }
    };
    smith_common(&mut report, &s);
    report.push(match cok_smith(&s) {
        Ok(back) => Check::from_bool("cok_smith.recovers_augmentation", back == *b, || {
            "cok_smith(smith_from_augmented(B)) differs from B".into()
        }),
        Err(e) => Check::fail("cok_smith.recovers_augmentation", e.to_string()),
    });
    report
}

/// The same battery for the Smith ideal `A ↪ k ⊕ A` of a non-unital algebra.
pub fn smith_nonunital(a: &NonUnitalAlgebra) -> Report {
    let mut report = Report::new("smith-check");
    match nu_algebra_as_smith(a) {
        Ok(s) => smith_common(&mut report, &s),
        Err(e) => report.push(Check::fail("build", e.to_string())),
    }
    report
}

fn smith_common(report: &mut Report, s: &SmithIdealVect) {
    report.absorb("verify", verify_smith_ideal(s, SmithCheckOptions::default()));
    report.push(Check::from_bool("unit_cokernel", is_unit_cokernel(s), || {
        "cokernel is not an augmentation".into()
    }));
    let localized = is_localized_unit_cokernel(s);
    let image = is_kernel_image(s);
    report.push(Check::from_bool("characterizations.agree", localized == image, || {
        format!("localized unit-cokernel: {localized}, kernel image: {image}")
    }));
    report.push(Check::from_bool("characterizations.member", localized && image, || {
        format!("localized unit-cokernel: {localized}, kernel image: {image}")
    }));
}

/// Corrupts one entry of `μ` chosen from `seed` and reports whether
/// `verify_smith_ideal` rejects it; the witness records the mutation and the
/// first failing check.
pub fn smith_mutation(s: &SmithIdealVect, seed: Seed) -> Check {
    let mut r = rng(seed);
    let field = s.field();
    let candidates: Vec<usize> = [0, 1]
        .into_iter()
        .filter(|&c| {
            let m = if c == 0 { &s.mu.comp0 } else { &s.mu.comp1 };
            m.rows() > 0 && m.cols() > 0
        })
        .collect();
    let name = format!("mutation.seed{seed}");
    if candidates.is_empty() {
        return Check::fail(name, "μ has no entries to corrupt");
    }
    let component = candidates[r.gen_range(0..candidates.len())];
    let m = if component == 0 { &s.mu.comp0 } else { &s.mu.comp1 };
    let (row, col) = (r.gen_range(0..m.rows()), r.gen_range(0..m.cols()));
    let delta = match field {
        Field::Rationals => {
            let v: i64 = r.gen_range(1..=3);
            field.from_i64(if r.gen_bool(0.5) { v } else { -v })
        }
        Field::PrimeField(p) => field.from_i64(r.gen_range(1..p as i64)),
    };
    let mutated = mutate_mu(s, component, row, col, &delta);
    let report = verify_smith_ideal(&mutated, SmithCheckOptions::default());
    let first = report.failures().next().cloned();
    match first {
        Some(f) => {
            let mut c = Check::pass(name);
            c.witness = Some(format!(
                "μ{component}[{row}][{col}] += {}: {} ({})",
                field.format_scalar(&delta),
                f.name,
                f.witness.unwrap_or_default()
            ));
            c
        }
        None => Check::fail(
            name,
            format!("μ{component}[{row}][{col}] += {} was accepted", field.format_scalar(&delta)),
        ),
    }
}

/// A morphism `cok(f) → g` with random components: `φ₀ = K_g·A + B·Q_f`
/// makes `g φ₀ f = 0`, so `g φ₀` factors through `cok(f)`.
fn random_square_from_cokernel(r: &mut impl Rng, f: &ArrowObject, g: &ArrowObject) -> Result<ArrowMorphism> {
    let field = f.field();
    let q = cokernel_projection(f.map());
    let kg = kernel_basis(g.map());
    let a = random_matrix(r, field, kg.cols(), f.cod_dim());
    let b = random_matrix(r, field, g.dom_dim(), q.rows());
    let phi0 = &(&kg * &a) + &(&b * &q);
    let phi1 = crate::linalg::factor_through_cokernel(&q, &(g.map() * &phi0))?;
    ArrowMorphism::new(cok(f), g.clone(), phi0, phi1)
}

/// The monoidal and adjunction identities on a pair of random arrows.
pub fn monoidal_instance(seed: Seed, field: Field, max_dim: usize) -> Report {
    let mut r = rng(seed);
    let f = random_arrow_with(&mut r, field, max_dim);
    let g = random_arrow_with(&mut r, field, max_dim);
    let mut report = monoidal_pair(&f, &g, seed);
    report.command = format!("monoidal seed {seed}");
    report
}

/// The monoidal and adjunction identities on a given pair; `seed` drives the
/// random square used for the adjoint transposes.
pub fn monoidal_pair(f: &ArrowObject, g: &ArrowObject, seed: Seed) -> Report {
    let mut report = Report::new("monoidal");
    let field = f.field();
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let (f, g) = (f.clone(), g.clone());

    report.push(match strong_monoidal_comparison(&f, &g) {
        Ok(m) => Check::from_bool("strong_comparison.iso", m.is_iso(), || "not invertible".into()),
        Err(e) => Check::fail("strong_comparison.iso", e.to_string()),
    });
    report.push(match lax_comparison(&f, &g) {
        Ok(m) => Check::from_defect(
            "lax_comparison.square",
            m.square_defect().map(|(r, c)| format!("entry ({r}, {c})")),
        ),
        Err(e) => Check::fail("lax_comparison.square", e.to_string()),
    });

    for (label, x) in [("f", &f), ("g", &g)] {
        // ε_{cok x} ∘ cok(η_x) = id_{cok x}
        let tri = cok_morphism(&adjunction_unit(x))
            .and_then(|c| adjunction_counit(&cok(x)).compose(&c));
        report.push(match tri {
            Ok(m) => morphism_equal(&format!("triangle.cok.{label}"), &m, &ArrowMorphism::identity(&cok(x))),
            Err(e) => Check::fail(format!("triangle.cok.{label}"), e.to_string()),
        });
        // ker(ε_x) ∘ η_{ker x} = id_{ker x}
        let tri = ker_morphism(&adjunction_counit(x))
            .and_then(|k| k.compose(&adjunction_unit(&ker(x))));
        report.push(match tri {
            Ok(m) => morphism_equal(&format!("triangle.ker.{label}"), &m, &ArrowMorphism::identity(&ker(x))),
            Err(e) => Check::fail(format!("triangle.ker.{label}"), e.to_string()),
        });
        let unit_iso = adjunction_unit(x).is_iso();
        report.push(Check::from_bool(format!("unit_iso_iff_mono.{label}"), unit_iso == x.is_mono(), || {
            format!("unit iso: {unit_iso}, mono: {}", x.is_mono())
        }));
        let once = im(x);
        report.push(Check::from_bool(format!("im_idempotent.{label}"), im(&once) == once, || {
            "im(im f) differs from im f".into()
        }));
        let unit = unit_box(field);
        let left = pushout_product(&unit, x).map(|p| p.arrow);
        let right = pushout_product(x, &unit).map(|p| p.arrow);
        report.push(Check::from_bool(
            format!("box_unit.{label}"),
            left.as_ref().ok() == Some(x) && right.as_ref().ok() == Some(x),
            || "(0→k)□f or f□(0→k) differs from f".into(),
        ));
    }

    let transposes = random_square_from_cokernel(&mut r, &f, &g).and_then(|phi| {
        let psi = adjoint_transpose_fwd(&f, &phi)?;
        let back = adjoint_transpose_bwd(&g, &psi)?;
        let again = adjoint_transpose_fwd(&f, &back)?;
        Ok(vec![
            morphism_equal("transpose.bwd_fwd", &back, &phi),
            morphism_equal("transpose.fwd_bwd", &again, &psi),
        ])
    });
    report.checks.extend(result_check("transpose", transposes));

    let symmetry = box_symmetry(&f, &g).and_then(|s| {
        let back = box_symmetry(&g, &f)?;
        let round = back.compose(&s)?;
        Ok(vec![
            Check::from_bool("box_symmetry.iso", s.is_iso(), || "not invertible".into()),
            morphism_equal("box_symmetry.involutive", &round, &ArrowMorphism::identity(&s.src)),
        ])
    });
    report.checks.extend(result_check("box_symmetry", symmetry));
    report
}

/// Stability checks on a random chain map with at most four nonzero degrees
/// and dimension at most three in each.
pub fn stable_instance(seed: Seed, field: Field) -> Report {
    let mut report = Report::new(format!("stable seed {seed}"));
    let mut r = rng(seed);
    let range = r.gen_range(1..=4);
    let x = random_complex_with(&mut r, field, range, 3);
    let y = random_complex_with(&mut r, field, range, 3);
    let f = random_chain_map_between(&mut r, &x, &y);
    stable_checks(&mut report, &f);
    report
}

pub fn stable_checks(report: &mut Report, f: &ChainMap) {
    let push = |report: &mut Report, name: &str, r: Result<bool>, witness: &str| {
        report.push(match r {
            Ok(ok) => Check::from_bool(name, ok, || witness.into()),
            Err(e) => Check::fail(name, e.to_string()),
        })
    };
    push(report, "unit.arrow_weq", stable_unit_check(f), "f → hofib(hocofib f) is not a weak equivalence");
    push(report, "counit.arrow_weq", stable_counit_check(f), "hocofib(hofib f) → f is not a weak equivalence");
    let by_cone = is_quasi_iso(f);
    let by_homology = is_quasi_iso_by_homology(f);
    push(
        report,
        "quasi_iso.cone_matches_homology",
        by_cone.map(|c| c == by_homology),
        "cone acyclicity disagrees with the induced maps on homology",
    );
    push(
        report,
        "cone_id.acyclic",
        cone(&ChainMap::identity(&f.src)).map(|c| c.complex.is_acyclic()),
        "cone(id) has homology",
    );
    push(
        report,
        "fiber_id.acyclic",
        fiber(&ChainMap::identity(&f.dst)).map(|c| c.complex.is_acyclic()),
        "fiber(id) has homology",
    );
}

/// Every chain-level operation on maps concentrated in degree 0 against its
/// vector-space counterpart.
pub fn degree_zero_instance(seed: Seed, field: Field) -> Report {
    let mut report = Report::new(format!("degree-0 seed {seed}"));
    let mut r = rng(seed);
    let f = random_arrow_with(&mut r, field, 3);
    let g = random_arrow_with(&mut r, field, 3);
    let (cf, cg) = (degree_zero_map(f.map()), degree_zero_map(g.map()));
    let chain_vs_vect = || -> Result<Vec<Check>> {
        Ok(vec![
            matrix_equal("cokernel", &strict_cokernel(&cf)?.component(0), &cokernel_projection(f.map())),
            matrix_equal("kernel", &strict_kernel(&cf)?.component(0), &kernel_basis(f.map())),
            matrix_equal("tensor", &tensor_map(&cf, &cg)?.component(0), &kronecker(f.map(), g.map())?),
            matrix_equal(
                "pushout_product",
                &pushout_product_chain(&cf, &cg)?.component(0),
                pushout_product(&f, &g)?.arrow.map(),
            ),
            Check::from_bool(
                "quasi_iso_is_iso",
                is_quasi_iso(&cf)? == crate::linalg::is_iso(f.map()),
                || "quasi-iso test disagrees with invertibility".into(),
            ),
        ])
    };
    report.checks.extend(result_check("degree0", chain_vs_vect()));
    report
}

/// `dg_unitalize` of an algebra placed in degree 0 against `unitalize`, and
/// the strict dg roundtrip.
pub fn dg_degree_zero_agreement(a: &NonUnitalAlgebra) -> Report {
    let mut report = Report::new("dg-degree-0");
    let dg = DGAlgebraNU::from_algebra(a);
    let both = || -> Result<Vec<Check>> {
        let b = dg_unitalize(&dg)?;
        let v = unitalize(a)?;
        Ok(vec![
            matrix_equal("mult", &b.base().mult.component(0), &v.base().mult_matrix()),
            matrix_equal("unit", &b.alg.unit.component(0), &v.alg.unit_column()),
            matrix_equal("eps", &b.eps.component(0), &v.eps_row()),
        ])
    };
    report.checks.extend(result_check("unitalize", both()));
    report.push(dg_roundtrip(&dg).checks.into_iter().last().unwrap_or_else(|| Check::fail("roundtrip", "empty")));
    report
}

/// `dg_augmentation_kernel(dg_unitalize(A)) = A` on the nose.
pub fn dg_roundtrip(a: &DGAlgebraNU) -> Report {
    let mut report = Report::new("dg-roundtrip");
    report.checks.extend(a.checks());
    if !report.passed() {
        return report;
    }
    match dg_unitalize(a) {
        Ok(b) => {
            report.checks.extend(prefixed("unitalized", b.checks()));
            report.push(match dg_augmentation_kernel(&b) {
                Ok((k, _)) => Check::from_bool("roundtrip.equal", k == *a, || "kernel of ε differs from A".into()),
                Err(e) => Check::fail("roundtrip.equal", e.to_string()),
            });
        }
        Err(e) => report.push(Check::fail("unitalize", e.to_string())),
    }
    report
}

/// Validators for each file type.
pub fn validate(doc: &crate::format::Document) -> Report {
    use crate::format::Document;
    let mut report = Report::new("validate");
    match doc {
        Document::NonUnital(a) => report.push(a.associativity_check()),
        Document::Unital(a) => {
            report.push(a.base.associativity_check());
            report.push(a.unit_check());
        }
        Document::Augmented(b) => report.checks.extend(b.checks()),
        Document::Arrows(arrows) => {
            for (i, a) in arrows.iter().enumerate() {
                report.push(Check::pass(format!("arrow.{i}.shape {}x{}", a.cod_dim(), a.dom_dim())));
            }
        }
        Document::Complex(c) => report.push(Check::from_defect(
            "d_squared",
            c.d_squared_defect().map(|(n, (r, col))| format!("degree {n}, entry ({r}, {col})")),
        )),
        Document::ChainMap(f) => report.push(Check::from_defect(
            "chain_map",
            f.chain_defect().map(|(n, (r, c))| format!("degree {n}, entry ({r}, {c})")),
        )),
        Document::DGAlgebra(a) => report.checks.extend(a.checks()),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{truncated_polynomial, upper_triangular};

    #[test]
    fn batteries_pass_on_small_instances() {
        let q = Field::Rationals;
        for seed in 0..5 {
            assert!(monoidal_instance(seed, q, 4).passed());
            assert!(stable_instance(seed, q).passed());
            assert!(degree_zero_instance(seed, q).passed());
        }
        assert!(roundtrip_augmented(&truncated_polynomial(q, 3)).passed());
        assert!(smith_augmented(&upper_triangular(q, 2)).passed());
    }

    #[test]
    fn mutations_are_rejected() {
        let s = smith_from_augmented(&truncated_polynomial(Field::Rationals, 2)).unwrap();
        for seed in 0..10 {
            let c = smith_mutation(&s, seed);
            assert!(c.passed, "{c:?}");
        }
    }
}
