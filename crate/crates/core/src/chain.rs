//! Bounded chain complexes over a field: homology, tensor products with the
//! Koszul sign rule, mapping cones and fibers, and the homotopy-level unit
//! and counit comparisons of the `cok ⊣ ker` adjunction.
//!
//! Sign conventions:
//! * `d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy`
//! * `cone(f)_n = X_{n−1} ⊕ Y_n` with `d = [[−d_X, 0], [−f, d_Y]]`
//! * `fiber(f) = cone(f)[−1]`, and `C[k]_n = C_{n−k}` with `d = (−1)^k d_C`
//!
//! `(C ⊗ D)_n` is ordered by the degree `p` of the `C` factor, each block
//! `C_p ⊗ D_{n−p}` in Kronecker order.

use std::collections::BTreeMap;

use crate::error::{shape, Error, Result};
use crate::field::Field;
use crate::linalg::{self, cokernel_projection, factor_through_cokernel, factor_through_kernel, kernel_basis, kronecker, rank};
use crate::matrix::Matrix;

pub type Degree = i32;

/// `… → C_n → C_{n−1} → …`, nonzero only in degrees `lo..=hi`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    field: Field,
    lo: Degree,
    dims: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i}: C_{lo+i} → C_{lo+i−1}`.
    diffs: Vec<Matrix>,
}

impl PartialEq for ChainComplex {
    /// Equal as complexes; differing only in zero-dimensional padding is fine.
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi + 1).all(|n| self.dim(n) == other.dim(n) && self.d(n) == other.d(n))
    }
}

impl Eq for ChainComplex {}

impl ChainComplex {
    /// `diffs` maps a degree `n` to `d_n`; missing degrees are zero. Rejects
    /// shape errors and `d² ≠ 0`.
    pub fn new(field: Field, lo: Degree, dims: Vec<usize>, diffs: BTreeMap<Degree, Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(field, lo, dims, diffs)?;
        if let Some((n, (r, col))) = c.d_squared_defect() {
            return Err(Error::Invalid(format!(
                "d_{}∘d_{} ≠ 0 at entry ({r}, {col})",
                n - 1,
                n
            )));
        }
        Ok(c)
    }

    /// Shape-checked, but `d² = 0` is left to [`ChainComplex::d_squared_defect`].
    pub fn new_unchecked(
        field: Field,
        lo: Degree,
        dims: Vec<usize>,
        mut diffs: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(shape("a complex needs at least one degree"));
        }
        let hi = lo + dims.len() as Degree - 1;
        let dim = |n: Degree| {
            if n < lo || n > hi {
                0
            } else {
                dims[(n - lo) as usize]
            }
        };
        for (&n, m) in &diffs {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.rows() != dim(n - 1) || m.cols() != dim(n) {
                return Err(shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(n - 1),
                    dim(n)
                )));
            }
            if (n < lo || n > hi) && !m.is_zero() {
                return Err(shape(format!("d_{n} lies outside the range {lo}..{hi}")));
            }
        }
        let built = (lo..=hi)
            .map(|n| {
                diffs
                    .remove(&n)
                    .unwrap_or_else(|| Matrix::zeros(field, dim(n - 1), dim(n)))
            })
            .collect();
        Ok(ChainComplex {
            field,
            lo,
            dims,
            diffs: built,
        })
    }

    /// `k` in degree 0.
    pub fn unit(field: Field) -> Self {
        Self::concentrated(field, 0, 1)
    }

    /// `k^dim` in a single degree.
    pub fn concentrated(field: Field, degree: Degree, dim: usize) -> Self {
        ChainComplex {
            field,
            lo: degree,
            dims: vec![dim],
            diffs: vec![Matrix::zeros(field, 0, dim)],
        }
    }

    pub fn zero(field: Field) -> Self {
        Self::concentrated(field, 0, 0)
    }

    /// The complex `X₀ → X₁` placed in degrees 1 and 0.
    pub fn two_term(map: &Matrix) -> Self {
        let mut diffs = BTreeMap::new();
        diffs.insert(1, map.clone());
        Self::new(map.field(), 0, vec![map.rows(), map.cols()], diffs).expect("two-term complex")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> Degree {
        self.lo
    }

    pub fn hi(&self) -> Degree {
        self.lo + self.dims.len() as Degree - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<Degree> {
        self.lo..=self.hi()
    }

    pub fn dim(&self, n: Degree) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d_n: C_n → C_{n−1}`, zero outside the range.
    pub fn d(&self, n: Degree) -> Matrix {
        if n < self.lo || n > self.hi() {
            Matrix::zeros(self.field, self.dim(n - 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    /// First degree `n` and entry where `d_{n−1}·d_n ≠ 0`.
    pub fn d_squared_defect(&self) -> Option<(Degree, (usize, usize))> {
        for n in self.lo + 1..=self.hi() {
            let dd = &self.d(n - 1) * &self.d(n);
            if let Some(pos) = dd.first_difference(&Matrix::zeros(self.field, dd.rows(), dd.cols())) {
                return Some((n, pos));
            }
        }
        None
    }

    /// `dim H_n = dim C_n − rank d_n − rank d_{n+1}` for every degree in range.
    pub fn homology(&self) -> Vec<(Degree, usize)> {
        self.degrees()
            .map(|n| (n, self.dim(n) - rank(&self.d(n)) - rank(&self.d(n + 1))))
            .collect()
    }

    pub fn homology_dim(&self, n: Degree) -> usize {
        self.dim(n) - rank(&self.d(n)) - rank(&self.d(n + 1))
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().iter().all(|&(_, h)| h == 0)
    }

    /// `C[k]_n = C_{n−k}`, `d = (−1)^k d_C`.
    pub fn shift(&self, k: Degree) -> ChainComplex {
        let sign = self.field.sign(k as i64);
        ChainComplex {
            field: self.field,
            lo: self.lo + k,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }
}

/// A degree-0 map of complexes commuting with the differentials.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub src: ChainComplex,
    pub dst: ChainComplex,
    comps: BTreeMap<Degree, Matrix>,
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.dst == other.dst
            && self.degrees().all(|n| self.component(n) == other.component(n))
    }
}

impl Eq for ChainMap {}

impl ChainMap {
    /// Missing components are zero. Rejects shape errors and non-chain maps.
    pub fn new(src: ChainComplex, dst: ChainComplex, comps: BTreeMap<Degree, Matrix>) -> Result<Self> {
        let f = Self::new_unchecked(src, dst, comps)?;
        if let Some((n, (r, c))) = f.chain_defect() {
            return Err(Error::Invalid(format!(
                "d∘f ≠ f∘d in degree {n} at entry ({r}, {c})"
            )));
        }
        Ok(f)
    }

    pub fn new_unchecked(src: ChainComplex, dst: ChainComplex, comps: BTreeMap<Degree, Matrix>) -> Result<Self> {
        if src.field != dst.field {
            return Err(Error::FieldMismatch(src.field, dst.field));
        }
        for (&n, m) in &comps {
            if m.field() != src.field {
                return Err(Error::FieldMismatch(src.field, m.field()));
            }
            if m.rows() != dst.dim(n) || m.cols() != src.dim(n) {
                return Err(shape(format!(
                    "component {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dst.dim(n),
                    src.dim(n)
                )));
            }
        }
        let comps = comps.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect();
        Ok(ChainMap { src, dst, comps })
    }

    /// Builds components degree by degree over the union of both ranges.
    pub fn from_fn(src: &ChainComplex, dst: &ChainComplex, mut comp: impl FnMut(Degree) -> Matrix) -> Result<Self> {
        let comps = union_range(src, dst).map(|n| (n, comp(n))).collect();
        Self::new(src.clone(), dst.clone(), comps)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c.degrees().map(|n| (n, Matrix::identity(c.field, c.dim(n)))).collect();
        Self::new_unchecked(c.clone(), c.clone(), comps).expect("identity")
    }

    pub fn zero(src: &ChainComplex, dst: &ChainComplex) -> Self {
        Self::new_unchecked(src.clone(), dst.clone(), BTreeMap::new()).expect("zero map")
    }

    pub fn field(&self) -> Field {
        self.src.field
    }

    pub fn component(&self, n: Degree) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.src.field, self.dst.dim(n), self.src.dim(n)))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<Degree> {
        union_range(&self.src, &self.dst)
    }

    /// First degree and entry where `d_Y·f_n ≠ f_{n−1}·d_X`.
    pub fn chain_defect(&self) -> Option<(Degree, (usize, usize))> {
        let (lo, hi) = (*self.degrees().start(), *self.degrees().end());
        for n in lo..=hi + 1 {
            let lhs = &self.dst.d(n) * &self.component(n);
            let rhs = &self.component(n - 1) * &self.src.d(n);
            if let Some(pos) = lhs.first_difference(&rhs) {
                return Some((n, pos));
            }
        }
        None
    }

    /// `self ∘ before`.
    pub fn compose(&self, before: &ChainMap) -> Result<ChainMap> {
        if before.dst != self.src {
            return Err(shape("composing chain maps whose middle complexes differ"));
        }
        let comps = union_range(&before.src, &self.dst)
            .map(|n| (n, &self.component(n) * &before.component(n)))
            .collect();
        Self::new_unchecked(before.src.clone(), self.dst.clone(), comps)
    }

    pub fn is_degreewise_mono(&self) -> bool {
        self.degrees().all(|n| linalg::is_mono(&self.component(n)))
    }

    pub fn is_degreewise_epi(&self) -> bool {
        self.degrees().all(|n| linalg::is_epi(&self.component(n)))
    }

    /// Same components, viewed between equal complexes with other padding.
    pub fn retarget(&self, src: &ChainComplex, dst: &ChainComplex) -> Result<ChainMap> {
        if src != &self.src || dst != &self.dst {
            return Err(shape("retargeting between different complexes"));
        }
        Self::new_unchecked(src.clone(), dst.clone(), self.comps.clone())
    }
}

fn union_range(a: &ChainComplex, b: &ChainComplex) -> std::ops::RangeInclusive<Degree> {
    a.lo.min(b.lo)..=a.hi().max(b.hi())
}

/// One summand `C_p ⊗ D_q` of `(C ⊗ D)_{p+q}` and its offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorBlock {
    pub p: Degree,
    pub q: Degree,
    pub offset: usize,
    pub len: usize,
}

/// The nonempty blocks of `(C ⊗ D)_n`, in basis order.
pub fn tensor_blocks(c: &ChainComplex, d: &ChainComplex, n: Degree) -> Vec<TensorBlock> {
    let mut out = Vec::new();
    let mut offset = 0;
    for p in c.degrees() {
        let q = n - p;
        let len = c.dim(p) * d.dim(q);
        if len > 0 {
            out.push(TensorBlock { p, q, offset, len });
            offset += len;
        }
    }
    out
}

fn find_block(blocks: &[TensorBlock], p: Degree) -> Option<&TensorBlock> {
    blocks.iter().find(|b| b.p == p)
}

pub fn tensor_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.field != d.field {
        return Err(Error::FieldMismatch(c.field, d.field));
    }
    let f = c.field;
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    let dims: Vec<usize> = (lo..=hi)
        .map(|n| tensor_blocks(c, d, n).iter().map(|b| b.len).sum())
        .collect();
    let dim = |n: Degree| if n < lo || n > hi { 0 } else { dims[(n - lo) as usize] };
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let src = tensor_blocks(c, d, n);
        let dst = tensor_blocks(c, d, n - 1);
        let mut m = Matrix::zeros(f, dim(n - 1), dim(n));
        for b in &src {
            let (p, q) = (b.p, b.q);
            if let Some(t) = find_block(&dst, p - 1) {
                let blk = kronecker(&c.d(p), &Matrix::identity(f, d.dim(q)))?;
                m.set_block(t.offset, b.offset, &blk);
            }
            if let Some(t) = find_block(&dst, p) {
                let blk = kronecker(&Matrix::identity(f, c.dim(p)), &d.d(q))?.scale(&f.sign(p as i64));
                m.set_block(t.offset, b.offset, &blk);
            }
        }
        diffs.insert(n, m);
    }
    ChainComplex::new(f, lo, dims, diffs)
}

/// `f ⊗ g`, blockwise `f_p ⊗ g_q`.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let src = tensor_complex(&f.src, &g.src)?;
    let dst = tensor_complex(&f.dst, &g.dst)?;
    let field = f.field();
    let mut comps = BTreeMap::new();
    for n in union_range(&src, &dst) {
        let sb = tensor_blocks(&f.src, &g.src, n);
        let tb = tensor_blocks(&f.dst, &g.dst, n);
        let mut m = Matrix::zeros(field, dst.dim(n), src.dim(n));
        for b in &sb {
            if let Some(t) = tb.iter().find(|t| t.p == b.p) {
                m.set_block(t.offset, b.offset, &kronecker(&f.component(b.p), &g.component(b.q))?);
            }
        }
        comps.insert(n, m);
    }
    ChainMap::new(src, dst, comps)
}

/// For each basis vector of `((A⊗B)⊗C)_n`, its position in `(A⊗(B⊗C))_n`.
pub fn associator(a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> Result<ChainMap> {
    let ab = tensor_complex(a, b)?;
    let bc = tensor_complex(b, c)?;
    let left = tensor_complex(&ab, c)?;
    let right = tensor_complex(a, &bc)?;
    let field = a.field;
    let mut comps = BTreeMap::new();
    for n in left.degrees() {
        // label = (p, q, s, i, j, k) for the basis element a_i ⊗ b_j ⊗ c_k
        let mut right_pos = BTreeMap::new();
        for outer in tensor_blocks(a, &bc, n) {
            let inner = tensor_blocks(b, c, outer.q);
            let bc_len = bc.dim(outer.q);
            for i in 0..a.dim(outer.p) {
                for blk in &inner {
                    let cdim = c.dim(blk.q);
                    for u in 0..blk.len {
                        let (j, k) = (u / cdim, u % cdim);
                        right_pos.insert(
                            (outer.p, blk.p, blk.q, i, j, k),
                            outer.offset + i * bc_len + blk.offset + u,
                        );
                    }
                }
            }
        }
        let mut perm = vec![0; left.dim(n)];
        for outer in tensor_blocks(&ab, c, n) {
            let inner = tensor_blocks(a, b, outer.p);
            let cdim = c.dim(outer.q);
            for blk in &inner {
                let bdim = b.dim(blk.q);
                for u in 0..blk.len {
                    let (i, j) = (u / bdim, u % bdim);
                    for k in 0..cdim {
                        let pos = outer.offset + (blk.offset + u) * cdim + k;
                        perm[pos] = right_pos[&(blk.p, blk.q, outer.q, i, j, k)];
                    }
                }
            }
        }
        comps.insert(n, Matrix::permutation(field, &perm));
    }
    ChainMap::new(left, right, comps)
}

/// Mapping cone with its canonical maps `Y → cone(f) → X[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub complex: ChainComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

pub fn cone(f: &ChainMap) -> Result<Cone> {
    let (x, y) = (&f.src, &f.dst);
    let field = f.field();
    let lo = (x.lo + 1).min(y.lo);
    let hi = (x.hi() + 1).max(y.hi());
    let dims: Vec<usize> = (lo..=hi).map(|n| x.dim(n - 1) + y.dim(n)).collect();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let (xs, ys) = (x.dim(n - 1), y.dim(n));
        let (xt, yt) = (x.dim(n - 2), y.dim(n - 1));
        let mut m = Matrix::zeros(field, xt + yt, xs + ys);
        m.set_block(0, 0, &-&x.d(n - 1));
        m.set_block(xt, 0, &-&f.component(n - 1));
        m.set_block(xt, xs, &y.d(n));
        diffs.insert(n, m);
    }
    let complex = ChainComplex::new(field, lo, dims, diffs)?;
    let shifted = x.shift(1);
    let incl = ChainMap::from_fn(y, &complex, |n| {
        let mut m = Matrix::zeros(field, complex.dim(n), y.dim(n));
        m.set_block(x.dim(n - 1), 0, &Matrix::identity(field, y.dim(n)));
        m
    })?;
    let proj = ChainMap::from_fn(&complex, &shifted, |n| {
        let mut m = Matrix::zeros(field, shifted.dim(n), complex.dim(n));
        m.set_block(0, 0, &Matrix::identity(field, x.dim(n - 1)));
        m
    })?;
    Ok(Cone {
        complex,
        incl,
        proj,
    })
}

/// Homotopy fiber `cone(f)[−1]` with its projection to the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub complex: ChainComplex,
    pub proj: ChainMap,
}

pub fn fiber(f: &ChainMap) -> Result<Fiber> {
    let x = &f.src;
    let field = f.field();
    let complex = cone(f)?.complex.shift(-1);
    // fiber_n = X_n ⊕ Y_{n+1}
    let proj = ChainMap::from_fn(&complex, x, |n| {
        let mut m = Matrix::zeros(field, x.dim(n), complex.dim(n));
        m.set_block(0, 0, &Matrix::identity(field, x.dim(n)));
        m
    })?;
    Ok(Fiber { complex, proj })
}

/// Quasi-isomorphism test through the mapping cone.
pub fn is_quasi_iso(f: &ChainMap) -> Result<bool> {
    Ok(cone(f)?.complex.is_acyclic())
}

/// Rank of `H_n(f)`: `rank [f·Z_n(X) | B_n(Y)] − rank B_n(Y)`.
pub fn homology_map_rank(f: &ChainMap, n: Degree) -> usize {
    let cycles = kernel_basis(&f.src.d(n));
    let boundaries = f.dst.d(n + 1);
    let image = &f.component(n) * &cycles;
    let both = image.hstack(&boundaries).expect("same codomain");
    rank(&both) - rank(&boundaries)
}

/// Quasi-isomorphism test by comparing induced maps on homology directly.
pub fn is_quasi_iso_by_homology(f: &ChainMap) -> bool {
    f.degrees().all(|n| {
        let (hx, hy) = (f.src.homology_dim(n), f.dst.homology_dim(n));
        hx == hy && homology_map_rank(f, n) == hx
    })
}

/// Strict degreewise cokernel `Y → Y / f(X)`.
pub fn strict_cokernel(f: &ChainMap) -> Result<ChainMap> {
    let y = &f.dst;
    let field = f.field();
    let projs: BTreeMap<Degree, Matrix> = y.degrees().map(|n| (n, cokernel_projection(&f.component(n)))).collect();
    let proj = |n: Degree| projs.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(field, 0, y.dim(n)));
    let dims: Vec<usize> = y.degrees().map(|n| proj(n).rows()).collect();
    let mut diffs = BTreeMap::new();
    for n in y.degrees() {
        let target = &proj(n - 1) * &y.d(n);
        diffs.insert(n, factor_through_cokernel(&proj(n), &target)?);
    }
    let coker = ChainComplex::new(field, y.lo, dims, diffs)?;
    ChainMap::new(y.clone(), coker, projs)
}

/// Strict degreewise kernel `ker(f) → X`.
pub fn strict_kernel(f: &ChainMap) -> Result<ChainMap> {
    let x = &f.src;
    let field = f.field();
    let incls: BTreeMap<Degree, Matrix> = x.degrees().map(|n| (n, kernel_basis(&f.component(n)))).collect();
    let incl = |n: Degree| incls.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(field, x.dim(n), 0));
    let dims: Vec<usize> = x.degrees().map(|n| incl(n).cols()).collect();
    let mut diffs = BTreeMap::new();
    for n in x.degrees() {
        diffs.insert(n, factor_through_kernel(&incl(n - 1), &(&x.d(n) * &incl(n)))?);
    }
    let kernel = ChainComplex::new(field, x.lo, dims, diffs)?;
    ChainMap::new(kernel, x.clone(), incls)
}

/// A commuting square of chain maps: `dst ∘ comp0 = comp1 ∘ src`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainArrowMorphism {
    pub src: ChainMap,
    pub dst: ChainMap,
    pub comp0: ChainMap,
    pub comp1: ChainMap,
}

impl ChainArrowMorphism {
    pub fn new(src: ChainMap, dst: ChainMap, comp0: ChainMap, comp1: ChainMap) -> Result<Self> {
        let lhs = dst.compose(&comp0)?;
        let rhs = comp1.compose(&src)?;
        if let Some(n) = lhs.degrees().find(|&n| lhs.component(n) != rhs.component(n)) {
            return Err(Error::Invalid(format!("arrow square fails in degree {n}")));
        }
        Ok(ChainArrowMorphism {
            src,
            dst,
            comp0,
            comp1,
        })
    }
}

/// Weak equivalence of arrows: both components are quasi-isomorphisms.
pub fn arrow_weq(a: &ChainArrowMorphism) -> Result<bool> {
    Ok(is_quasi_iso(&a.comp0)? && is_quasi_iso(&a.comp1)?)
}

/// Degreewise injective in both components.
pub fn componentwise_cof(a: &ChainArrowMorphism) -> bool {
    a.comp0.is_degreewise_mono() && a.comp1.is_degreewise_mono()
}

/// Degreewise surjective in both components.
pub fn componentwise_fib(a: &ChainArrowMorphism) -> bool {
    a.comp0.is_degreewise_epi() && a.comp1.is_degreewise_epi()
}

/// The unit comparison `f → hofib(hocofib(f))` for `f: X → Y`: identity on
/// `Y`, and `X → fiber(Y → cone f)` given by `x ↦ (f x, −x, 0)`.
pub fn stable_unit_comparison(f: &ChainMap) -> Result<ChainArrowMorphism> {
    let field = f.field();
    let c = cone(f)?;
    let fib = fiber(&c.incl)?;
    let x = &f.src;
    // fiber_n = Y_n ⊕ cone_{n+1} = Y_n ⊕ X_n ⊕ Y_{n+1}
    let comp0 = ChainMap::from_fn(x, &fib.complex, |n| {
        let mut m = Matrix::zeros(field, fib.complex.dim(n), x.dim(n));
        m.set_block(0, 0, &f.component(n));
        m.set_block(f.dst.dim(n), 0, &-&Matrix::identity(field, x.dim(n)));
        m
    })?;
    let comp1 = ChainMap::identity(&f.dst);
    ChainArrowMorphism::new(f.clone(), fib.proj, comp0, comp1)
}

pub fn stable_unit_check(f: &ChainMap) -> Result<bool> {
    arrow_weq(&stable_unit_comparison(f)?)
}

/// The counit comparison `hocofib(hofib(g)) → g` for `g: Y₀ → Y₁`: identity
/// on `Y₀`, and `cone(p) → Y₁` given by `(y₀', y₁, y₀) ↦ −y₁ + g y₀`.
pub fn stable_counit_comparison(g: &ChainMap) -> Result<ChainArrowMorphism> {
    let field = g.field();
    let fib = fiber(g)?;
    let c = cone(&fib.proj)?;
    let (y0, y1) = (&g.src, &g.dst);
    // cone(p)_n = fiber_{n−1} ⊕ Y₀_n = Y₀_{n−1} ⊕ Y₁_n ⊕ Y₀_n
    let comp1 = ChainMap::from_fn(&c.complex, y1, |n| {
        let mut m = Matrix::zeros(field, y1.dim(n), c.complex.dim(n));
        m.set_block(0, y0.dim(n - 1), &-&Matrix::identity(field, y1.dim(n)));
        m.set_block(0, y0.dim(n - 1) + y1.dim(n), &g.component(n));
        m
    })?;
    let comp0 = ChainMap::identity(y0);
    ChainArrowMorphism::new(c.incl, g.clone(), comp0, comp1)
}

pub fn stable_counit_check(g: &ChainMap) -> Result<bool> {
    arrow_weq(&stable_counit_comparison(g)?)
}

/// `f □ g`: the degreewise pushout of `X₀⊗Y₁ ← X₀⊗Y₀ → X₁⊗Y₀` mapping to `X₁⊗Y₁`.
pub fn pushout_product_chain(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let field = f.field();
    let id = ChainMap::identity;
    let leg01 = tensor_map(&id(&f.src), g)?;
    let leg10 = tensor_map(f, &id(&g.src))?;
    let to01 = tensor_map(f, &id(&g.dst))?;
    let to10 = tensor_map(&id(&f.dst), g)?;
    let (a, b, c) = (&leg01.src, &leg01.dst, &leg10.dst);
    let lo = b.lo.min(c.lo);
    let hi = b.hi().max(c.hi());
    let mut projs = BTreeMap::new();
    for n in lo - 1..=hi {
        let p = linalg::pushout(&leg01.component(n), &leg10.component(n))?;
        projs.insert(n, p.projection());
    }
    let dims: Vec<usize> = (lo..=hi).map(|n| projs[&n].rows()).collect();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let sum_d = linalg::direct_sum(&b.d(n), &c.d(n))?;
        let target = &projs[&(n - 1)] * &sum_d;
        diffs.insert(n, factor_through_cokernel(&projs[&n], &target)?);
    }
    let domain = ChainComplex::new(field, lo, dims, diffs)?;
    let codomain = to01.dst.clone();
    let _ = a;
    let mut comps = BTreeMap::new();
    for n in lo..=hi {
        let induced = to01.component(n).hstack(&to10.component(n))?;
        comps.insert(n, factor_through_cokernel(&projs[&n], &induced)?);
    }
    ChainMap::new(domain, codomain, comps)
}

/// A chain complex concentrated in degree 0 on the map's domain and codomain,
/// so that a linear map becomes a chain map.
pub fn degree_zero_map(m: &Matrix) -> ChainMap {
    let field = m.field();
    let src = ChainComplex::concentrated(field, 0, m.cols());
    let dst = ChainComplex::concentrated(field, 0, m.rows());
    let mut comps = BTreeMap::new();
    comps.insert(0, m.clone());
    ChainMap::new(src, dst, comps).expect("degree-0 maps are chain maps")
}

/// A basis of the space of chain maps `X → Y`, found by solving
/// `d_Y f_n = f_{n−1} d_X` for all components at once.
pub fn chain_map_basis(x: &ChainComplex, y: &ChainComplex) -> Vec<ChainMap> {
    let field = x.field;
    let degrees: Vec<Degree> = union_range(x, y).collect();
    let mut offsets = BTreeMap::new();
    let mut unknowns = 0;
    for &n in &degrees {
        offsets.insert(n, unknowns);
        unknowns += x.dim(n) * y.dim(n);
    }
    let mut eq_offsets = BTreeMap::new();
    let mut equations = 0;
    for &n in &degrees {
        eq_offsets.insert(n, equations);
        equations += y.dim(n - 1) * x.dim(n);
    }
    // Constraint for degree n, entry (r, c): (d_Y f_n − f_{n−1} d_X)[r][c] = 0.
    let mut system = Matrix::zeros(field, equations, unknowns);
    for &n in &degrees {
        let (dy, dx) = (y.d(n), x.d(n));
        let eq0 = eq_offsets[&n];
        let xc = x.dim(n);
        for r in 0..y.dim(n - 1) {
            for c in 0..xc {
                let row = eq0 + r * xc + c;
                // d_Y f_n: Σ_k dY[r][k] f_n[k][c]
                for k in 0..y.dim(n) {
                    let v = dy.get(r, k);
                    if !num_traits::Zero::is_zero(v) {
                        let col = offsets[&n] + k * xc + c;
                        let cur = system.get(row, col).clone();
                        system.set(row, col, field.add(&cur, v));
                    }
                }
                // − f_{n−1} d_X: Σ_k f_{n−1}[r][k] dX[k][c]
                if let Some(&off) = offsets.get(&(n - 1)) {
                    let xk = x.dim(n - 1);
                    for k in 0..xk {
                        let v = dx.get(k, c);
                        if !num_traits::Zero::is_zero(v) {
                            let col = off + r * xk + k;
                            let cur = system.get(row, col).clone();
                            system.set(row, col, field.sub(&cur, v));
                        }
                    }
                }
            }
        }
    }
    let basis = kernel_basis(&system);
    (0..basis.cols())
        .map(|b| {
            let v = basis.column_vec(b);
            let comps = degrees
                .iter()
                .map(|&n| {
                    let (r, c) = (y.dim(n), x.dim(n));
                    let off = offsets[&n];
                    (n, Matrix::from_fn(field, r, c, |i, j| v[off + i * c + j].clone()))
                })
                .collect();
            ChainMap::new(x.clone(), y.clone(), comps).expect("solutions are chain maps")
        })
        .collect()
}
