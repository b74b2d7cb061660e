//! Named algebra families and seeded random linear data.
//!
//! Randomness only enters through matrices: arrows, complexes, chain maps and
//! changes of basis. Associative multiplications come from the named families.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{augmentation_kernel, AugmentedAlgebra, NonUnitalAlgebra, UnitalAlgebra};
use crate::arrow::ArrowObject;
use crate::chain::{chain_map_basis, ChainComplex, ChainMap, Degree};
use crate::dg::DGAlgebraNU;
use crate::field::{Field, Scalar};
use crate::linalg::kernel_basis;
use crate::matrix::Matrix;

pub type Seed = u64;

pub fn rng(seed: Seed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_vector(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

fn augmented(field: Field, dim: usize, table: Vec<(usize, usize, usize, Scalar)>, unit: Vec<Scalar>, eps: Vec<Scalar>) -> AugmentedAlgebra {
    let base = NonUnitalAlgebra::new(field, dim, table).expect("family table in range");
    let alg = UnitalAlgebra::new(base, unit).expect("family unit");
    AugmentedAlgebra::new(alg, eps).expect("family augmentation")
}

/// `k[x]/(xⁿ)` on the basis `1, x, …, x^{n−1}`, with `ε(x) = 0`.
pub fn truncated_polynomial(field: Field, n: usize) -> AugmentedAlgebra {
    assert!(n >= 1, "k[x]/(x^n) needs n >= 1");
    let table = (0..n)
        .flat_map(|a| (0..n - a).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, a + b, field.one()))
        .collect();
    augmented(field, n, table, unit_vector(field, n, 0), unit_vector(field, n, 0))
}

/// Upper-triangular `n × n` matrices on the matrix units `E_ij` (`i ≤ j`, in
/// lexicographic order), with `ε` the `(0, 0)` entry.
pub fn upper_triangular(field: Field, n: usize) -> AugmentedAlgebra {
    assert!(n >= 1, "T_n needs n >= 1");
    let units: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index: BTreeMap<(usize, usize), usize> = units.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let dim = units.len();
    let mut table = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                table.push((a, b, index[&(i, l)], field.one()));
            }
        }
    }
    let mut unit = vec![field.zero(); dim];
    for i in 0..n {
        unit[index[&(i, i)]] = field.one();
    }
    augmented(field, dim, table, unit, unit_vector(field, dim, index[&(0, 0)]))
}

/// The group algebra of `C_n` on `1, g, …, g^{n−1}`, with `ε(g) = 1`.
pub fn cyclic_group_algebra(field: Field, n: usize) -> AugmentedAlgebra {
    assert!(n >= 1, "C_n needs n >= 1");
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b, (a + b) % n, field.one())))
        .collect();
    augmented(field, n, table, unit_vector(field, n, 0), vec![field.one(); n])
}

/// `k^n` with zero multiplication.
pub fn square_zero(field: Field, n: usize) -> NonUnitalAlgebra {
    NonUnitalAlgebra::zero_product(field, n)
}

/// A small random scalar: an integer in `[-3, 3]` over `Q`, any residue over `F_p`.
pub fn random_scalar(rng: &mut impl Rng, field: Field) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        Field::PrimeField(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_matrix(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

/// A random matrix whose rank is drawn uniformly from `0..=min(rows, cols)`.
pub fn random_matrix_of_random_rank(rng: &mut impl Rng, field: Field, rows: usize, cols: usize) -> Matrix {
    let r = rng.gen_range(0..=rows.min(cols));
    &random_matrix(rng, field, rows, r) * &random_matrix(rng, field, r, cols)
}

/// An invertible matrix, as a product of random unitriangular factors and a
/// permutation.
pub fn random_invertible(rng: &mut impl Rng, field: Field, n: usize) -> Matrix {
    let lower = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => random_scalar(rng, field),
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Less => field.zero(),
    });
    let upper = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => random_scalar(rng, field),
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Greater => field.zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    &(&lower * &upper) * &Matrix::permutation(field, &perm)
}

/// An arrow `k^a → k^b` with `a, b ≤ max_dim` and random rank.
pub fn random_arrow_with(rng: &mut impl Rng, field: Field, max_dim: usize) -> ArrowObject {
    let a = rng.gen_range(0..=max_dim);
    let b = rng.gen_range(0..=max_dim);
    ArrowObject::new(random_matrix_of_random_rank(rng, field, b, a))
}

pub fn random_arrow(seed: Seed, field: Field, max_dim: usize) -> ArrowObject {
    random_arrow_with(&mut rng(seed), field, max_dim)
}

/// A complex in `range` consecutive degrees starting at `lo ∈ [−2, 1]`, each
/// of dimension `≤ max_dim`. Each `d_n` factors through `ker d_{n−1}`, so
/// `d² = 0` holds by construction.
pub fn random_complex_with(rng: &mut impl Rng, field: Field, range: usize, max_dim: usize) -> ChainComplex {
    let range = range.max(1);
    let lo: Degree = rng.gen_range(-2..=1);
    let dims: Vec<usize> = (0..range).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs = BTreeMap::new();
    let mut below = Matrix::zeros(field, 0, dims[0]);
    for (i, &dim) in dims.iter().enumerate().skip(1) {
        let cycles = kernel_basis(&below);
        let d = &cycles * &random_matrix_of_random_rank(rng, field, cycles.cols(), dim);
        diffs.insert(lo + i as Degree, d.clone());
        below = d;
    }
    ChainComplex::new(field, lo, dims, diffs).expect("d² = 0 by construction")
}

pub fn random_complex(seed: Seed, field: Field, range: usize, max_dim: usize) -> ChainComplex {
    random_complex_with(&mut rng(seed), field, range, max_dim)
}

/// A random element of the space of chain maps `x → y`.
pub fn random_chain_map_between(rng: &mut impl Rng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let field = x.field();
    let mut f = ChainMap::zero(x, y);
    for b in chain_map_basis(x, y) {
        let c = random_scalar(rng, field);
        let comps = f
            .degrees()
            .map(|n| (n, &f.component(n) + &b.component(n).scale(&c)))
            .collect();
        f = ChainMap::new(x.clone(), y.clone(), comps).expect("sums of chain maps");
    }
    f
}

/// Source and target from [`random_complex_with`], then a random chain map.
pub fn random_chain_map(seed: Seed, field: Field, range: usize, max_dim: usize) -> ChainMap {
    let mut r = rng(seed);
    let x = random_complex_with(&mut r, field, range, max_dim);
    let y = random_complex_with(&mut r, field, range, max_dim);
    random_chain_map_between(&mut r, &x, &y)
}

/// The two fields every corpus is instantiated over.
pub fn corpus_fields() -> [Field; 2] {
    [Field::Rationals, Field::prime(5).expect("5 is prime")]
}

/// `truncated_polynomial` n = 1..4, `upper_triangular` n = 1..3 and
/// `cyclic_group_algebra` n = 1..4, over `Q` and `F_5`.
pub fn augmented_corpus() -> Vec<(String, AugmentedAlgebra)> {
    let mut out = Vec::new();
    for field in corpus_fields() {
        for n in 1..=4 {
            out.push((format!("truncated_polynomial({field}, {n})"), truncated_polynomial(field, n)));
        }
        for n in 1..=3 {
            out.push((format!("upper_triangular({field}, {n})"), upper_triangular(field, n)));
        }
        for n in 1..=4 {
            out.push((format!("cyclic_group_algebra({field}, {n})"), cyclic_group_algebra(field, n)));
        }
    }
    out
}

/// Augmentation kernels of the augmented corpus, square-zero algebras, and
/// a seeded change of basis of each kernel.
pub fn nonunital_corpus() -> Vec<(String, NonUnitalAlgebra)> {
    let mut out = Vec::new();
    let mut r = rng(0x5eed);
    for (name, b) in augmented_corpus() {
        let (k, _) = augmentation_kernel(&b).expect("kernel of an augmentation");
        let g = random_invertible(&mut r, k.field(), k.dim());
        let moved = k.change_basis(&g).expect("invertible change of basis");
        out.push((format!("ker {name}"), k));
        out.push((format!("ker {name} (rebased)"), moved));
    }
    for field in corpus_fields() {
        for n in 0..=3 {
            out.push((format!("square_zero({field}, {n})"), square_zero(field, n)));
        }
    }
    out
}

/// Square-zero algebras in degrees 0 and 1, zero multiplications on seeded
/// random complexes, and every non-unital corpus algebra placed in degree 0.
pub fn dg_corpus() -> Vec<(String, DGAlgebraNU)> {
    let mut out = Vec::new();
    for field in corpus_fields() {
        for degree in [0, 1] {
            for dim in 0..=2 {
                out.push((
                    format!("square_zero({field}, degree {degree}, dim {dim})"),
                    DGAlgebraNU::square_zero(field, degree, dim),
                ));
            }
        }
        for seed in 0..4 {
            let c = random_complex(seed, field, 3, 2);
            out.push((format!("zero_mult(random_complex({field}, seed {seed}))"), DGAlgebraNU::zero_mult(c)));
        }
    }
    for (name, a) in nonunital_corpus() {
        out.push((format!("degree0({name})"), DGAlgebraNU::from_algebra(&a)));
    }
    out
}
