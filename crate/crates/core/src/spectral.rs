//! Finite-dimensional spectral theory of the integrals on quasi-invariants.
//!
//! All spaces are `W(T)`: quasi-invariants whose monomials lie in a finite,
//! convex, `S_n x S_m`-stable set `T`. Such a space is preserved by every
//! integral, so the integrals act on it by commuting matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::eq_class;
use crate::error::{Error, Result};
use num_rational::BigRational;

use crate::kfield::{IntPolyK, RatK};
use crate::laurent::{
    box_slice, deformed_power_sum, dominant_rep, orbit, orbit_sum, partial_leq, schur_poly, Block,
    Exponent, LaurentPoly,
};
use crate::linalg::{in_span, span_basis, span_dim, Matrix, Vector};
use crate::partition::Partition;
use crate::quasi::{integrals_upto, is_quasi_invariant};
use crate::rootsys::{singular_minus, theta_all, Weight};

/// `h = Π_{i<=n<j} (x_i/x_j - 2 + x_j/x_i)`, which vanishes to second order
/// on every odd hyperplane.
pub fn odd_discriminant(n: usize, m: usize) -> LaurentPoly {
    let mut h = LaurentPoly::one(n, m);
    for (i, j) in crate::quasi::odd_pairs(n, m) {
        let mut e = vec![0; n + m];
        e[i] = 1;
        e[j] = -1;
        let mut f = LaurentPoly::constant(n, m, RatK::from_int(-2));
        f.add_term(e.clone(), RatK::one());
        f.add_term(e.iter().map(|x| -x).collect(), RatK::one());
        h = &h * &f;
    }
    h
}

/// A quasi-invariant with unique maximal term `x^χ` (coefficient 1):
/// `h · m_ν` with `ν = χ - (m,..,m | -n,..,-n)`.
pub fn seed(chi: &Weight) -> LaurentPoly {
    let (n, m) = chi.dims();
    let nu: Vec<i64> = chi
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i < n { c - m as i64 } else { c + n as i64 })
        .collect();
    &odd_discriminant(n, m) * &orbit_sum(&nu, n, m)
}

/// `g₁ g₂` with `g₁ = Π(x_i - x_{n+j})² s_λ(x_even) s_μ(x_odd)` and
/// `g₂ = Π(x_i⁻¹ - x_{n+j}⁻¹)² (x_1⋯x_n)^c (x_{n+1}⋯x_{n+m})^d`, where
/// `c = a_n - 2m` and `d = b_m + 2n` make `λ = a - 2m - c` and `μ = b + 2n - d`
/// partitions with a zero last part.
pub fn g1g2(chi: &Weight) -> Result<LaurentPoly> {
    if !chi.is_dominant() {
        return Err(Error::Domain(alloc::format!("{chi} is not dominant")));
    }
    let (n, m) = chi.dims();
    let c = chi.a().last().map_or(0, |&a| a - 2 * m as i64);
    let d = chi.b().last().map_or(0, |&b| b + 2 * n as i64);
    let lambda = Partition::new(chi.a().iter().map(|&a| a - 2 * m as i64 - c).collect())?;
    let mu = Partition::new(chi.b().iter().map(|&b| b + 2 * n as i64 - d).collect())?;
    let mut g = &schur_poly(&lambda, Block::Even, n, m)? * &schur_poly(&mu, Block::Odd, n, m)?;
    for (i, j) in crate::quasi::odd_pairs(n, m) {
        let diff = &LaurentPoly::var(n, m, i) - &LaurentPoly::var(n, m, j);
        let inv = &LaurentPoly::var_pow(n, m, i, -1) - &LaurentPoly::var_pow(n, m, j, -1);
        g = &(&g * &diff.pow(2)) * &inv.pow(2);
    }
    let shift: Vec<i64> = (0..n + m).map(|i| if i < n { c } else { d }).collect();
    Ok(g.shift(&shift))
}

/// Limits on the exact linear algebra.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest admissible support (number of exponents).
    pub max_support: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_support: 4000 }
    }
}

/// Basis of `W(T)`.
///
/// Elements are stored through their orbit coefficients: entry `o` of a
/// vector is the coefficient at the dominant representative `orbits[o]`.
#[derive(Clone, Debug)]
pub struct QuasiSpace {
    n: usize,
    m: usize,
    support: BTreeSet<Exponent>,
    orbits: Vec<Exponent>,
    index: BTreeMap<Exponent, usize>,
    vectors: Vec<Vector>,
    free: Vec<usize>,
    /// Value of basis element `b` at its free column.
    scale: Vec<RatK>,
    basis: Vec<LaurentPoly>,
}

/// `W(support)`; the support must be stable under `S_n x S_m`.
pub fn quasi_space(support: &BTreeSet<Exponent>, n: usize, m: usize) -> Result<QuasiSpace> {
    quasi_space_with(support, n, m, &Limits::default())
}

pub fn quasi_space_with(
    support: &BTreeSet<Exponent>,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<QuasiSpace> {
    if support.len() > limits.max_support {
        return Err(Error::Resource(alloc::format!(
            "support of {} exponents exceeds {}",
            support.len(),
            limits.max_support
        )));
    }
    let mut orbits = Vec::new();
    for e in support {
        if e.len() != n + m {
            return Err(Error::Domain(String::from("exponent of wrong length")));
        }
        if dominant_rep(e, n) == *e {
            if orbit(e, n).iter().any(|x| !support.contains(x)) {
                return Err(Error::Domain(alloc::format!(
                    "support is not symmetric at {e:?}"
                )));
            }
            orbits.push(e.clone());
        } else if !support.contains(&dominant_rep(e, n)) {
            return Err(Error::Domain(alloc::format!(
                "support is not symmetric at {e:?}"
            )));
        }
    }
    let index: BTreeMap<Exponent, usize> = orbits
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let sums: Vec<LaurentPoly> = orbits.iter().map(|e| orbit_sum(e, n, m)).collect();
    let vectors = if n > 0 && m > 0 {
        // by symmetry one odd pair carries all conditions
        let (i, j) = (0, n);
        let conds: Vec<LaurentPoly> = sums
            .iter()
            .map(|f| (&f.euler(i) - &f.euler(j).scale(&RatK::k())).substitute_eq(i, j))
            .collect();
        let rows: BTreeSet<Exponent> = conds
            .iter()
            .flat_map(|c| c.terms().keys().cloned())
            .collect();
        let row_index: BTreeMap<&Exponent, usize> =
            rows.iter().enumerate().map(|(r, e)| (e, r)).collect();
        let mut mat = Matrix::zeros(rows.len(), orbits.len());
        for (col, c) in conds.iter().enumerate() {
            for (e, v) in c.terms() {
                mat.set(row_index[e], col, v.clone());
            }
        }
        mat.nullspace()
    } else {
        (0..orbits.len())
            .map(|o| {
                let mut v = vec![RatK::zero(); orbits.len()];
                v[o] = RatK::one();
                v
            })
            .collect()
    };
    let free = vectors
        .iter()
        .map(|v| v.iter().rposition(RatK::is_one).expect("free column"))
        .collect::<Vec<_>>();
    // polynomial coefficients keep the integrals free of gcd computations
    let vectors: Vec<Vector> = vectors.iter().map(|v| primitive(v)).collect();
    let scale = vectors
        .iter()
        .zip(&free)
        .map(|(v, &f)| v[f].clone())
        .collect();
    let basis: Vec<LaurentPoly> = vectors.iter().map(|v| combine(&sums, v, n, m)).collect();
    let space = QuasiSpace {
        n,
        m,
        support: support.clone(),
        orbits,
        index,
        vectors,
        free,
        scale,
        basis,
    };
    for b in &space.basis {
        if !is_quasi_invariant(b) {
            return Err(Error::Violation(String::from(
                "solved basis element is not quasi-invariant",
            )));
        }
    }
    // the free columns must read off coordinates
    for (a, v) in space.vectors.iter().enumerate() {
        for (b, &f) in space.free.iter().enumerate() {
            if v[f].is_zero() == (a == b) {
                return Err(Error::Violation(String::from(
                    "nullspace basis is not in reduced form",
                )));
            }
        }
    }
    Ok(space)
}

/// `v` scaled to polynomial entries with no common factor.
fn primitive(v: &[RatK]) -> Vector {
    let mut den = IntPolyK::one();
    for x in v {
        if !x.is_zero() {
            let g = IntPolyK::gcd(&den, x.den());
            den = &den * &x.den().div_exact(&g);
        }
    }
    let d = RatK::from_poly(den);
    let w: Vector = v.iter().map(|x| x * &d).collect();
    let mut g = IntPolyK::zero();
    for x in &w {
        if !x.is_zero() {
            g = if g.is_zero() {
                x.num().clone()
            } else {
                IntPolyK::gcd(&g, x.num())
            };
        }
    }
    if g.is_zero() || g.is_one() {
        return w;
    }
    let g = RatK::from_poly(g);
    w.iter()
        .map(|x| x.checked_div(&g).expect("nonzero content"))
        .collect()
}

fn combine(sums: &[LaurentPoly], v: &[RatK], n: usize, m: usize) -> LaurentPoly {
    let mut f = LaurentPoly::zero(n, m);
    for (s, c) in sums.iter().zip(v) {
        if !c.is_zero() {
            f = &f + &s.scale(c);
        }
    }
    f
}

impl QuasiSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn support(&self) -> &BTreeSet<Exponent> {
        &self.support
    }

    pub fn basis(&self) -> &[LaurentPoly] {
        &self.basis
    }

    /// Dominant representatives of the orbits in the support.
    pub fn orbits(&self) -> &[Exponent] {
        &self.orbits
    }

    /// Orbit coefficients of the basis elements.
    pub fn orbit_vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn orbit_index(&self, e: &[i64]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Orbit coefficients of a symmetric polynomial supported in `T`.
    pub fn orbit_coords(&self, f: &LaurentPoly) -> Result<Vector> {
        let mut v = vec![RatK::zero(); self.orbits.len()];
        for (e, c) in f.terms() {
            if !self.support.contains(e) {
                return Err(Error::Violation(alloc::format!(
                    "monomial {e:?} leaves the support"
                )));
            }
            if let Some(&o) = self.index.get(e) {
                v[o] = c.clone();
            }
        }
        Ok(v)
    }

    /// Coordinates of `f ∈ W(T)` in the basis; errors if `f` is not in the space.
    pub fn coords(&self, f: &LaurentPoly) -> Result<Vector> {
        let v = self.orbit_coords(f)?;
        let c: Vector = self
            .free
            .iter()
            .zip(&self.scale)
            .map(|(&j, s)| v[j].checked_div(s))
            .collect::<Result<_>>()?;
        if self.orbit_combination(&c) != v || self.poly(&c) != *f {
            return Err(Error::Violation(String::from(
                "element is not in the quasi-invariant space",
            )));
        }
        Ok(c)
    }

    /// Orbit coefficients of `Σ c_i basis_i`.
    pub fn orbit_combination(&self, c: &[RatK]) -> Vector {
        let mut acc = vec![RatK::zero(); self.orbits.len()];
        for (coef, v) in c.iter().zip(&self.vectors) {
            if coef.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(v) {
                if !x.is_zero() {
                    *a = &*a + &(coef * x);
                }
            }
        }
        acc
    }

    pub fn poly(&self, c: &[RatK]) -> LaurentPoly {
        let mut f = LaurentPoly::zero(self.n, self.m);
        for (coef, b) in c.iter().zip(&self.basis) {
            if !coef.is_zero() {
                f = &f + &b.scale(coef);
            }
        }
        f
    }

    /// Matrices of `L_1, ..., L_rmax` in the basis, with columns the images.
    pub fn operator_matrices(&self, rmax: usize) -> Result<Vec<Matrix>> {
        let d = self.dim();
        let mut mats = vec![Matrix::zeros(d, d); rmax];
        for (col, b) in self.basis.iter().enumerate() {
            let images = integrals_upto(rmax, b)?;
            for (r, img) in images.iter().enumerate() {
                let c = self.coords(img).map_err(|_| {
                    Error::Violation(alloc::format!("L_{} leaves the space", r + 1))
                })?;
                for (row, x) in c.into_iter().enumerate() {
                    mats[r].set(row, col, x);
                }
            }
        }
        Ok(mats)
    }
}

/// `{μ : lo ≤ μ ≤ hi blockwise, Σμ = degree, dominant_rep(μ) ⪯ top}`.
///
/// Convex and stable under `S_n x S_m`: the last condition says every
/// rearrangement of `μ` lies below `top`.
pub fn support_below(top: &Weight, even: (i64, i64), odd: (i64, i64)) -> BTreeSet<Exponent> {
    let (n, m) = top.dims();
    let lo: Vec<i64> = (0..n + m)
        .map(|i| if i < n { even.0 } else { odd.0 })
        .collect();
    let hi: Vec<i64> = (0..n + m)
        .map(|i| if i < n { even.1 } else { odd.1 })
        .collect();
    let degree: i64 = top.coords().iter().sum();
    box_slice(&lo, &hi, degree)
        .into_iter()
        .filter(|e| partial_leq(&dominant_rep(e, n), top.coords()))
        .collect()
}

/// Blockwise bounds of all exponents of the given polynomials.
fn block_bounds(polys: &[LaurentPoly], n: usize) -> ((i64, i64), (i64, i64)) {
    let mut even = (i64::MAX, i64::MIN);
    let mut odd = (i64::MAX, i64::MIN);
    for f in polys {
        for e in f.terms().keys() {
            for (i, &x) in e.iter().enumerate() {
                let b = if i < n { &mut even } else { &mut odd };
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
    }
    if even.0 > even.1 {
        even = (0, 0);
    }
    if odd.0 > odd.1 {
        odd = (0, 0);
    }
    (even, odd)
}

/// Number of integrals used to cut out generalised eigenspaces; two more are
/// used to confirm that nothing changes.
pub fn cut_rank(n: usize, m: usize) -> usize {
    (n + m).max(1)
}

/// Restriction of `a` to an invariant subspace with basis `cols` (columns).
fn restrict(a: &Matrix, cols: &[Vector]) -> Result<Matrix> {
    let k = cols.len();
    if k == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let b = Matrix::from_cols(cols[0].len(), cols);
    let mut out = Matrix::zeros(k, k);
    for (j, v) in cols.iter().enumerate() {
        let img = a.mul_vec(v);
        let x = b
            .solve(&img)
            .ok_or_else(|| Error::Violation(String::from("subspace is not invariant")))?;
        for (i, e) in x.into_iter().enumerate() {
            out.set(i, j, e);
        }
    }
    Ok(out)
}

/// `ker N^∞` for a square `N`.
fn generalized_kernel(nm: &Matrix) -> Vec<Vector> {
    let mut p = nm.clone();
    let mut ker = p.nullspace();
    loop {
        if ker.len() == nm.rows() {
            return ker;
        }
        p = p.mul(nm);
        let next = p.nullspace();
        if next.len() == ker.len() {
            return ker;
        }
        ker = next;
    }
}

fn apply_basis(cols: &[Vector], x: &[RatK]) -> Vector {
    let mut acc = vec![RatK::zero(); cols.first().map_or(0, Vec::len)];
    for (c, v) in x.iter().zip(cols) {
        if c.is_zero() {
            continue;
        }
        for (a, e) in acc.iter_mut().zip(v) {
            if !e.is_zero() {
                *a = &*a + &(c * e);
            }
        }
    }
    acc
}

/// Common generalised eigenspace of commuting matrices for eigenvalues `theta`.
fn joint_gen_kernel(mats: &[Matrix], theta: &[RatK], dim: usize) -> Result<Vec<Vector>> {
    let mut cols: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut v = vec![RatK::zero(); dim];
            v[i] = RatK::one();
            v
        })
        .collect();
    for (a, t) in mats.iter().zip(theta) {
        if cols.is_empty() {
            break;
        }
        let local = restrict(a, &cols)?.shift(t);
        let ker = generalized_kernel(&local);
        cols = ker.iter().map(|x| apply_basis(&cols, x)).collect();
    }
    Ok(cols)
}

/// The generalised eigenspace of the class of a regular weight.
#[derive(Clone, Debug)]
pub struct GenEigenspace {
    pub chi_min: Weight,
    /// Number of components; the expected dimension is `2^r`.
    pub r: usize,
    pub class: Vec<Weight>,
    pub space: QuasiSpace,
    /// `θ_χ(L_s)` for `s = 1..=cut_rank + 2`.
    pub theta: Vec<RatK>,
    /// Matrices of `L_s` on the whole space, `s = 1..=cut_rank + 2`.
    pub matrices: Vec<Matrix>,
    /// Basis of the eigenspace, as coordinate vectors in `space`.
    pub basis: Vec<Vector>,
    /// `L_s - θ_χ(L_s)` restricted to the eigenspace.
    pub nilpotents: Vec<Matrix>,
    /// Adding the two extra integrals did not shrink the eigenspace.
    pub stable: bool,
}

impl GenEigenspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn polys(&self) -> Vec<LaurentPoly> {
        self.basis.iter().map(|c| self.space.poly(c)).collect()
    }

    /// The ⪯-largest member of the class.
    pub fn top(&self) -> &Weight {
        self.class
            .iter()
            .find(|w| {
                self.class
                    .iter()
                    .all(|v| partial_leq(v.coords(), w.coords()))
            })
            .expect("class has a top")
    }
}

impl GenEigenspace {
    /// The matrices of the integrals commute pairwise on the whole space.
    pub fn matrices_commute(&self) -> bool {
        self.matrices
            .iter()
            .enumerate()
            .all(|(i, a)| self.matrices[i + 1..].iter().all(|b| a.commutes_with(b)))
    }
}

fn specialize(a: &Matrix, k0: &BigRational) -> Result<Matrix> {
    let rows = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| x.eval(k0).map(|q| RatK::from_rational(&q)))
                .collect::<Result<Vector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(if rows.is_empty() {
        Matrix::zeros(0, a.cols())
    } else {
        Matrix::from_rows(rows)
    })
}

/// Dimension of the generalised eigenspace with the linear algebra done at
/// `k = k0`. Agrees with the exact dimension unless `k0` is a special value.
pub fn sampled_dimension(chi: &Weight, k0: &BigRational) -> Result<usize> {
    if !chi.is_regular() {
        return Err(Error::Domain(alloc::format!("{chi} is not in X_reg")));
    }
    let (n, m) = chi.dims();
    let (support, _) = class_support(chi)?;
    let space = quasi_space(&support, n, m)?;
    let rcut = cut_rank(n, m);
    let theta = theta_all(chi, rcut)?
        .iter()
        .map(|t| t.eval(k0).map(|q| RatK::from_rational(&q)))
        .collect::<Result<Vec<_>>>()?;
    let mats = space
        .operator_matrices(rcut)?
        .iter()
        .map(|a| specialize(a, k0))
        .collect::<Result<Vec<_>>>()?;
    Ok(joint_gen_kernel(&mats, &theta, space.dim())?.len())
}

/// A support containing the seeds of all members of a class, below its top member.
pub fn class_support(chi_min: &Weight) -> Result<(BTreeSet<Exponent>, Vec<Weight>)> {
    let report = eq_class(chi_min)?;
    let n = chi_min.n();
    let top = report.members.last().expect("nonempty class").0.clone();
    let seeds: Vec<LaurentPoly> = report.class.iter().map(seed).collect();
    let (even, odd) = block_bounds(&seeds, n);
    let support = support_below(&top, even, odd);
    for s in &seeds {
        if s.terms().keys().any(|e| !support.contains(e)) {
            return Err(Error::Violation(String::from(
                "a seed leaves the class support",
            )));
        }
    }
    Ok((support, report.class))
}

pub fn gen_eigenspace(chi: &Weight) -> Result<GenEigenspace> {
    gen_eigenspace_with(chi, &Limits::default())
}

pub fn gen_eigenspace_with(chi: &Weight, limits: &Limits) -> Result<GenEigenspace> {
    if !chi.is_regular() {
        return Err(Error::Domain(alloc::format!(
            "{chi} is not in X_reg: some odd positive root has (chi+rho, alpha) = (alpha, alpha)/2"
        )));
    }
    let (n, m) = chi.dims();
    let (support, class) = class_support(chi)?;
    let space = quasi_space_with(&support, n, m, limits)?;
    let rcut = cut_rank(n, m);
    let rmax = rcut + 2;
    let theta = theta_all(chi, rmax)?;
    let matrices = space.operator_matrices(rmax)?;
    let cut = joint_gen_kernel(&matrices[..rcut], &theta[..rcut], space.dim())?;
    let basis = joint_gen_kernel(&matrices, &theta, space.dim())?;
    let stable = cut.len() == basis.len();
    let nilpotents = matrices
        .iter()
        .zip(&theta)
        .map(|(a, t)| restrict(a, &basis).map(|x| x.shift(t)))
        .collect::<Result<Vec<_>>>()?;
    let r = singular_minus(chi).len();
    Ok(GenEigenspace {
        chi_min: chi.clone(),
        r,
        class,
        space,
        theta,
        matrices,
        basis,
        nilpotents,
        stable,
    })
}

/// Dimensions of all generalised eigenspaces of `W(T)`, keyed by a weight
/// representing each eigenvalue, and the dimension of `W(T)`.
///
/// Candidate eigenvalues are `θ_μ` for the leading exponents `μ` of an
/// echelon basis of `W(T)`.
pub fn spectral_split(space: &QuasiSpace) -> Result<(Vec<(Weight, usize)>, usize)> {
    let (n, m) = space.dims();
    let rmax = cut_rank(n, m);
    let mats = space.operator_matrices(rmax)?;
    let leading = leading_exponents(space);
    let mut seen: Vec<(Vec<RatK>, Weight)> = Vec::new();
    for e in leading {
        let w = Weight::new(n, m, e)?;
        let t = theta_all(&w, rmax)?;
        if !seen.iter().any(|(s, _)| *s == t) {
            seen.push((t, w));
        }
    }
    let mut out = Vec::new();
    for (t, w) in seen {
        out.push((w, joint_gen_kernel(&mats, &t, space.dim())?.len()));
    }
    Ok((out, space.dim()))
}

/// Orbit columns sorted by a total order refining ⪯, largest first.
fn descending_orbits(space: &QuasiSpace) -> Vec<usize> {
    let prefix = |e: &Exponent| -> Vec<i64> {
        e.iter()
            .scan(0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect()
    };
    let mut cols: Vec<usize> = (0..space.orbits.len()).collect();
    cols.sort_by(|&a, &b| prefix(&space.orbits[b]).cmp(&prefix(&space.orbits[a])));
    cols
}

/// Pivot orbits of an echelon basis for a total order refining ⪯.
pub fn leading_exponents(space: &QuasiSpace) -> Vec<Exponent> {
    if space.dim() == 0 {
        return Vec::new();
    }
    let cols = descending_orbits(space);
    let rows: Vec<Vector> = space
        .vectors
        .iter()
        .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let r = Matrix::from_rows(rows).rref();
    r.pivots
        .iter()
        .map(|&p| space.orbits[cols[p]].clone())
        .collect()
}

/// The canonical `f_χ`.
///
/// It is the element of the generalised eigenspace for `θ_χ` inside
/// `W(T_χ)`, `T_χ` the support below `χ` spanned by the seed of `χ`, whose
/// reduced echelon row has its pivot at `x^χ`. Its coefficient at `x^χ` is 1
/// and its coefficients at all other leading exponents vanish.
pub fn f_chi(chi: &Weight) -> Result<LaurentPoly> {
    if !chi.is_dominant() {
        return Err(Error::Domain(alloc::format!("{chi} is not dominant")));
    }
    let (n, m) = chi.dims();
    let s = seed(chi);
    let (even, odd) = block_bounds(core::slice::from_ref(&s), n);
    let support = support_below(chi, even, odd);
    let space = quasi_space(&support, n, m)?;
    let rmax = cut_rank(n, m);
    let theta = theta_all(chi, rmax)?;
    let mats = space.operator_matrices(rmax)?;
    let eig = joint_gen_kernel(&mats, &theta, space.dim())?;
    let top = space
        .orbit_index(chi.coords())
        .expect("chi is in its own support");
    let mut cols = descending_orbits(&space);
    cols.retain(|&c| c != top);
    cols.insert(0, top);
    let rows: Vec<Vector> = eig
        .iter()
        .map(|c| {
            let v = space.orbit_combination(c);
            cols.iter().map(|&j| v[j].clone()).collect()
        })
        .collect();
    let rr = Matrix::from_rows(rows).rref();
    if rr.pivots.first() != Some(&0) {
        return Err(Error::Violation(alloc::format!(
            "no eigenfunction with leading term x^{chi}"
        )));
    }
    let row = rr.matrix.row(0);
    let mut orbit_vec = vec![RatK::zero(); space.orbits.len()];
    for (p, &c) in cols.iter().enumerate() {
        orbit_vec[c] = row[p].clone();
    }
    let sums: Vec<LaurentPoly> = space.orbits.iter().map(|e| orbit_sum(e, n, m)).collect();
    Ok(combine(&sums, &orbit_vec, n, m))
}

/// Structure of the algebra generated by the integrals on a generalised eigenspace.
#[derive(Clone, Debug)]
pub struct LocalAlgebraReport {
    pub r: usize,
    pub dimension: usize,
    pub space_dimension: usize,
    pub commutative: bool,
    /// Every element of the span of the nilpotent generators is nilpotent and
    /// `A = C·1 ⊕ m`.
    pub local: bool,
    /// Smallest `j` with `m^j = 0`.
    pub nilpotency_index: usize,
    /// `dim m/m²`.
    pub cotangent_dim: usize,
    /// Commuting square-zero generators `g_1..g_r`.
    pub square_zero_generators: Vec<Matrix>,
    /// Square-free products of the generators are a basis of the algebra.
    pub square_free_basis: bool,
    /// Coordinates of a cyclic vector in the eigenspace basis.
    pub cyclic_vector: Vector,
    /// `A · v` is the whole eigenspace and `dim A = dim E`.
    pub regular: bool,
    /// `(S, T, product)` table for the square-free monomials `g_S`, indexed by bitmasks;
    /// `product` is `Some(S ∪ T)` or `None` for zero.
    pub structure_table: Vec<(u32, u32, Option<u32>)>,
}

impl LocalAlgebraReport {
    /// All structural checks expected of `C[ε]^{⊗r}` acting regularly.
    pub fn matches_dual_numbers(&self) -> bool {
        let r = self.r;
        self.dimension == 1 << r
            && self.space_dimension == 1 << r
            && self.commutative
            && self.local
            && self.cotangent_dim == r
            && self.nilpotency_index <= r + 1
            && self.square_zero_generators.len() == r
            && self.square_free_basis
            && self.regular
    }
}

fn flat(a: &Matrix) -> Vector {
    a.entries().to_vec()
}

fn unflat(v: &[RatK], k: usize) -> Matrix {
    Matrix::from_rows(v.chunks(k).map(<[RatK]>::to_vec).collect())
}

/// Basis of the span of products `x·y`, `x ∈ xs`, `y ∈ ys`.
fn product_span(xs: &[Matrix], ys: &[Matrix]) -> Vec<Matrix> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            out.push(flat(&x.mul(y)));
        }
    }
    basis_matrices(&out, xs.first().map_or(0, Matrix::rows))
}

fn basis_matrices(vs: &[Vector], k: usize) -> Vec<Matrix> {
    span_basis(vs)
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| unflat(v, k))
        .collect()
}

/// Unital algebra closure of `gens`, returned as a basis and the basis of
/// the nonunital closure.
fn algebra_closure(gens: &[Matrix], k: usize) -> (Vec<Matrix>, Vec<Matrix>) {
    let mut ideal: Vec<Matrix> = basis_matrices(&gens.iter().map(flat).collect::<Vec<_>>(), k);
    loop {
        let mut all: Vec<Vector> = ideal.iter().map(flat).collect();
        all.extend(product_span(&ideal, gens).iter().map(flat));
        let next = basis_matrices(&all, k);
        if next.len() == ideal.len() {
            break;
        }
        ideal = next;
    }
    let mut unital: Vec<Vector> = ideal.iter().map(flat).collect();
    unital.push(flat(&Matrix::identity(k)));
    (basis_matrices(&unital, k), ideal)
}

fn span_of(ms: &[Matrix]) -> Vec<Vector> {
    ms.iter().map(flat).collect()
}

fn contains(span: &[Vector], x: &Matrix) -> bool {
    in_span(span, &flat(x))
}

/// Solves `Σ c_i xs_i ∈ span(ys) + target` form: returns `c` with `target + Σ c_i xs_i ∈ span(ys)`.
fn solve_into(target: &Matrix, xs: &[Matrix], ys: &[Matrix]) -> Option<Vector> {
    let len = target.rows() * target.cols();
    let mut cols: Vec<Vector> = xs.iter().map(flat).collect();
    cols.extend(ys.iter().map(|y| flat(y).iter().map(|e| -e).collect()));
    let rhs: Vector = flat(target).iter().map(|e| -e).collect();
    if cols.is_empty() {
        return rhs.iter().all(RatK::is_zero).then(Vec::new);
    }
    Matrix::from_cols(len, &cols)
        .solve(&rhs)
        .map(|x| x[..xs.len()].to_vec())
}

fn lin_comb(ms: &[Matrix], c: &[RatK], k: usize) -> Matrix {
    let mut acc = Matrix::zeros(k, k);
    for (m, x) in ms.iter().zip(c) {
        if !x.is_zero() {
            acc = acc.add(&m.scale(x));
        }
    }
    acc
}

/// Structure of the algebra generated by `L_s - θ_χ(L_s)` on the eigenspace.
pub fn image_algebra(e: &GenEigenspace) -> Result<LocalAlgebraReport> {
    let k = e.dim();
    let r = e.r;
    let (alg, ideal) = algebra_closure(&e.nilpotents, k);
    let commutative = alg.iter().all(|a| alg.iter().all(|b| a.commutes_with(b)));
    let nilpotent = |x: &Matrix| {
        let mut p = Matrix::identity(k);
        for _ in 0..k {
            p = p.mul(x);
        }
        p.is_zero()
    };
    let weights: Vec<RatK> = (1..=ideal.len() as i64).map(RatK::from_int).collect();
    let local = ideal.len() + 1 == alg.len()
        && ideal.iter().all(nilpotent)
        && nilpotent(&lin_comb(&ideal, &weights, k));
    let m2 = product_span(&ideal, &ideal);
    let cotangent_dim = ideal.len() - m2.len();
    let mut nilpotency_index = 1;
    let mut mp = ideal.clone();
    while !mp.is_empty() {
        mp = product_span(&mp, &ideal);
        nilpotency_index += 1;
        if nilpotency_index > k + 1 {
            break;
        }
    }
    if ideal.is_empty() {
        nilpotency_index = 1;
    }

    let top = e.top().clone();
    let top_orbit = e
        .space
        .orbit_index(top.coords())
        .expect("top member in support");
    let cyc = (0..k)
        .find(|&i| !e.space.orbit_combination(&e.basis[i])[top_orbit].is_zero())
        .ok_or_else(|| {
            Error::Violation(String::from("no eigenspace element reaches the top member"))
        })?;
    let mut cyclic_vector = vec![RatK::zero(); k];
    cyclic_vector[cyc] = RatK::one();
    let orbit_span: Vec<Vector> = alg.iter().map(|a| a.mul_vec(&cyclic_vector)).collect();
    let regular = span_dim(&orbit_span) == k && alg.len() == k;

    let square_zero_generators = if commutative && local {
        square_zero_generators(e, &alg, &ideal, &cyclic_vector)?
    } else {
        Vec::new()
    };
    let mut monomials = Vec::new();
    for mask in 0u32..(1u32 << square_zero_generators.len()) {
        let mut p = Matrix::identity(k);
        for (t, g) in square_zero_generators.iter().enumerate() {
            if mask >> t & 1 == 1 {
                p = p.mul(g);
            }
        }
        monomials.push(p);
    }
    let square_free_basis = !square_zero_generators.is_empty() || r == 0;
    let square_free_basis = square_free_basis
        && span_dim(&span_of(&monomials)) == alg.len()
        && monomials.len() == alg.len()
        && square_zero_generators
            .iter()
            .all(|g| g.mul(g).is_zero() && contains(&span_of(&alg), g));
    let mut structure_table = Vec::new();
    for s in 0..monomials.len() as u32 {
        for t in 0..monomials.len() as u32 {
            let prod = monomials[s as usize].mul(&monomials[t as usize]);
            let expect = if s & t == 0 { Some(s | t) } else { None };
            let ok = match expect {
                Some(u) => prod == monomials[u as usize],
                None => prod.is_zero(),
            };
            structure_table.push((s, t, if ok { expect } else { None }));
            if !ok {
                return Err(Error::Violation(alloc::format!(
                    "generator monomials {s} and {t} do not multiply as dual numbers"
                )));
            }
        }
    }
    Ok(LocalAlgebraReport {
        r,
        dimension: alg.len(),
        space_dimension: k,
        commutative,
        local,
        nilpotency_index,
        cotangent_dim,
        square_zero_generators,
        square_free_basis,
        cyclic_vector,
        regular,
        structure_table,
    })
}

/// Square-zero generators, one per component of the class.
///
/// Components are taken from the lowest rows up. For component `t` the
/// submodule of eigenfunctions supported below `χ_min + Σ_{s≠t} β_s`
/// corresponds, modulo the ideal of the generators already found, to the
/// principal ideal of `g_t`. A generator of that quotient ideal is then
/// corrected back through the earlier ideals, one at a time; each
/// correction is linear because the earlier generators square to zero.
fn square_zero_generators(
    e: &GenEigenspace,
    alg: &[Matrix],
    ideal: &[Matrix],
    v: &[RatK],
) -> Result<Vec<Matrix>> {
    let k = e.dim();
    let report = eq_class(&e.chi_min)?;
    let r = report.r;
    let (n, _) = e.chi_min.dims();
    let even_hi = e
        .space
        .support()
        .iter()
        .flat_map(|x| x[..n].iter().copied())
        .max()
        .unwrap_or(0);
    let even_lo = e
        .space
        .support()
        .iter()
        .flat_map(|x| x[..n].iter().copied())
        .min()
        .unwrap_or(0);
    let odd_hi = e
        .space
        .support()
        .iter()
        .flat_map(|x| x[n..].iter().copied())
        .max()
        .unwrap_or(0);
    let odd_lo = e
        .space
        .support()
        .iter()
        .flat_map(|x| x[n..].iter().copied())
        .min()
        .unwrap_or(0);
    let orbit_vectors: Vec<Vector> = e
        .basis
        .iter()
        .map(|c| e.space.orbit_combination(c))
        .collect();
    let mut gens: Vec<Matrix> = Vec::new();
    let mut found_ideal: Vec<Matrix> = Vec::new();
    let m_span = span_of(ideal);
    for step in 0..r {
        let t = r - 1 - step;
        let mut target = e.chi_min.clone();
        for (s, gap) in report.gaps.iter().enumerate() {
            if s != t {
                target = target.add(&gap.beta);
            }
        }
        let below = support_below(&target, (even_lo, even_hi), (odd_lo, odd_hi));
        // J = {a : a v ∈ W(below)}
        let outside: Vec<usize> = e
            .space
            .orbits()
            .iter()
            .enumerate()
            .filter(|(_, o)| !below.contains(*o))
            .map(|(i, _)| i)
            .collect();
        let mut cond = Matrix::zeros(outside.len(), alg.len());
        for (col, a) in alg.iter().enumerate() {
            let av = a.mul_vec(v);
            let ov = apply_basis(&orbit_vectors, &av);
            for (row, &o) in outside.iter().enumerate() {
                cond.set(row, col, ov[o].clone());
            }
        }
        let j_span: Vec<Matrix> = if outside.is_empty() {
            alg.to_vec()
        } else {
            cond.nullspace()
                .iter()
                .map(|c| lin_comb(alg, c, k))
                .collect()
        };
        let mj = product_span(ideal, &j_span);
        let mut base = span_of(&found_ideal);
        let with_j: Vec<Vector> = base.iter().cloned().chain(span_of(&j_span)).collect();
        let expected = 1usize << (r - step - 1);
        if span_dim(&with_j) != span_dim(&base) + expected {
            return Err(Error::Violation(alloc::format!(
                "component ideal {step} has the wrong dimension"
            )));
        }
        base.extend(span_of(&mj));
        let y = j_span
            .iter()
            .find(|y| !in_span(&base, &flat(y)))
            .ok_or_else(|| Error::Violation(String::from("component ideal is not principal")))?;
        if !in_span(&m_span, &flat(y)) {
            return Err(Error::Violation(String::from(
                "component generator is not nilpotent",
            )));
        }
        let mut x = y.clone();
        for j in (0..gens.len()).rev() {
            let gj_ideal: Vec<Matrix> = product_span(core::slice::from_ref(&gens[j]), alg);
            let lower: Vec<Matrix> = ideal_of(&gens[..j], alg);
            let sq = x.mul(&x);
            let twice: Vec<Matrix> = gj_ideal
                .iter()
                .map(|z| x.mul(z).scale(&RatK::from_int(2)))
                .collect();
            let c = solve_into(&sq, &twice, &lower)
                .ok_or_else(|| Error::Violation(String::from("square-zero lift does not exist")))?;
            x = x.add(&lin_comb(&gj_ideal, &c, k));
        }
        if !x.mul(&x).is_zero() {
            return Err(Error::Violation(String::from(
                "corrected generator does not square to zero",
            )));
        }
        gens.push(x);
        found_ideal = ideal_of(&gens, alg);
    }
    Ok(gens)
}

fn ideal_of(gens: &[Matrix], alg: &[Matrix]) -> Vec<Matrix> {
    let k = alg.first().map_or(0, Matrix::rows);
    let mut all = Vec::new();
    for g in gens {
        all.extend(product_span(core::slice::from_ref(g), alg).iter().map(flat));
    }
    basis_matrices(&all, k)
}

/// The joint eigenfunction `J_χ`, normalised to have coefficient 1 at its
/// lexicographically largest ⪯-maximal term.
pub fn eigenfunction(e: &GenEigenspace) -> Result<LaurentPoly> {
    let k = e.dim();
    let mut rows = Vec::new();
    for nm in &e.nilpotents {
        for i in 0..k {
            rows.push(nm.row(i).to_vec());
        }
    }
    let joint = if rows.is_empty() {
        (0..k)
            .map(|i| {
                let mut v = vec![RatK::zero(); k];
                v[i] = RatK::one();
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    if joint.len() != 1 {
        return Err(Error::Violation(alloc::format!(
            "joint eigenspace has dimension {}",
            joint.len()
        )));
    }
    let c = apply_basis(&e.basis, &joint[0]);
    let f = e.space.poly(&c);
    let lead = f
        .max_terms()
        .into_iter()
        .max()
        .ok_or_else(|| Error::Violation(String::from("zero eigenfunction")))?;
    let inv = f.coeff(&lead).inv()?;
    Ok(f.scale(&inv))
}

/// Whether the algebra generated by the deformed power sums meets `W(window)`
/// in all of `W(window)`.
///
/// The window must be `S_n x S_m`-stable. For each degree `d` of the window,
/// products `p_{s_1}⋯p_{s_l}` of degree `d` whose positive indices sum to
/// `P` are added for `P = max(d, 0), max(d, 0) + 1, ...`; the combinations
/// supported in the window are compared with `W(window)`. Cancellation can
/// bring products with large Newton polytopes into the window, so `P` runs up
/// to the largest positive part in the window plus `cap_slack`.
pub fn power_sum_generation_check(window: &BTreeSet<Exponent>, n: usize, m: usize) -> Result<bool> {
    power_sum_generation_check_with(window, n, m, 2)
}

pub fn power_sum_generation_check_with(
    window: &BTreeSet<Exponent>,
    n: usize,
    m: usize,
    cap_slack: i64,
) -> Result<bool> {
    let space = quasi_space(window, n, m)?;
    let degrees: BTreeSet<i64> = window.iter().map(|e| e.iter().sum()).collect();
    let positive = window
        .iter()
        .map(|e| e.iter().filter(|&&x| x > 0).sum::<i64>())
        .max()
        .unwrap_or(0);
    let mut found: Vec<Vector> = Vec::new();
    for d in degrees {
        let target: Vec<Vector> = space
            .orbit_vectors()
            .iter()
            .filter(|v| {
                v.iter()
                    .zip(&space.orbits)
                    .any(|(c, e)| !c.is_zero() && e.iter().sum::<i64>() == d)
            })
            .cloned()
            .collect();
        let mut products: Vec<LaurentPoly> = Vec::new();
        let mut p = d.max(0);
        loop {
            let q = p - d;
            for lam in Partition::all_of_size(p) {
                for mu in Partition::all_of_size(q) {
                    let mut f = LaurentPoly::one(n, m);
                    for &s in lam.parts() {
                        f = &f * &deformed_power_sum(s, n, m)?;
                    }
                    for &s in mu.parts() {
                        f = &f * &deformed_power_sum(-s, n, m)?;
                    }
                    products.push(f);
                }
            }
            let inside = combinations_inside(&products, &space, n)?;
            if span_dim(&inside) >= span_dim(&target) || p >= positive + cap_slack || n + m == 0 {
                found.extend(inside);
                break;
            }
            p += 1;
        }
    }
    let inside_space = found.iter().all(|g| in_span(space.orbit_vectors(), g));
    Ok(inside_space && span_dim(&found) == space.dim())
}

/// Orbit coefficients of the combinations of symmetric `polys` supported in the space's window.
fn combinations_inside(polys: &[LaurentPoly], space: &QuasiSpace, n: usize) -> Result<Vec<Vector>> {
    let mut outside: BTreeMap<Exponent, usize> = BTreeMap::new();
    for f in polys {
        for e in f.terms().keys() {
            if !space.support.contains(e) && dominant_rep(e, n) == *e {
                let next = outside.len();
                outside.entry(e.clone()).or_insert(next);
            }
        }
    }
    let mut cond = Matrix::zeros(outside.len(), polys.len());
    for (col, f) in polys.iter().enumerate() {
        for (e, c) in f.terms() {
            if let Some(&row) = outside.get(e) {
                cond.set(row, col, c.clone());
            }
        }
    }
    let combos: Vec<Vector> = if outside.is_empty() {
        (0..polys.len())
            .map(|i| {
                let mut v = vec![RatK::zero(); polys.len()];
                v[i] = RatK::one();
                v
            })
            .collect()
    } else {
        cond.nullspace()
    };
    combos
        .iter()
        .map(|c| {
            let mut acc = vec![RatK::zero(); space.orbits.len()];
            for (coef, f) in c.iter().zip(polys) {
                if coef.is_zero() {
                    continue;
                }
                let v = space.orbit_coords(&restrict_to(f, &space.support))?;
                for (a, x) in acc.iter_mut().zip(&v) {
                    *a = &*a + &(coef * x);
                }
            }
            Ok(acc)
        })
        .collect()
}

fn restrict_to(f: &LaurentPoly, support: &BTreeSet<Exponent>) -> LaurentPoly {
    let (n, m) = f.dims();
    LaurentPoly::from_terms(
        n,
        m,
        f.terms()
            .iter()
            .filter(|(e, _)| support.contains(*e))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn set(v: &[&[i64]]) -> BTreeSet<Exponent> {
        v.iter().map(|e| e.to_vec()).collect()
    }

    #[test]
    fn quasi_space_examples() {
        let s = quasi_space(&set(&[&[1, -1], &[0, 0], &[-1, 1]]), 1, 1).unwrap();
        assert_eq!(s.dim(), 2);
        let m = LaurentPoly::parse(1, 1, "x1 x2^-1 + x1^-1 x2").unwrap();
        assert!(s.coords(&m).is_ok());
        assert!(s.coords(&LaurentPoly::one(1, 1)).is_ok());
        let s = quasi_space(&set(&[&[0, 0]]), 1, 1).unwrap();
        assert_eq!(s.basis(), &[LaurentPoly::one(1, 1)]);
        let s = quasi_space(&set(&[&[1, 0], &[0, 1]]), 1, 1).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(
            s.basis()[0].scale(&s.basis()[0].coeff(&[1, 0]).inv().unwrap()),
            deformed_power_sum(1, 1, 1).unwrap()
        );
        assert!(quasi_space(&set(&[&[1, 0]]), 2, 0).is_err());
        assert_eq!(
            quasi_space(&set(&[&[1, 0], &[0, 1]]), 2, 0).unwrap().dim(),
            1
        );
    }

    #[test]
    fn seeds_and_products_have_unique_top() {
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            for chi in Weight::dominant_box(n, m, 1) {
                for f in [seed(&chi), g1g2(&chi).unwrap()] {
                    assert!(is_quasi_invariant(&f), "{chi}");
                    assert_eq!(f.unique_max(), Some(chi.coords().to_vec()), "{chi}");
                }
            }
        }
    }

    #[test]
    fn f_chi_examples() {
        assert_eq!(f_chi(&w("(0|0)")).unwrap(), LaurentPoly::one(1, 1));
        assert_eq!(
            f_chi(&w("(1|-1)")).unwrap(),
            LaurentPoly::parse(1, 1, "x1 x2^-1 + x1^-1 x2").unwrap()
        );
        let f = f_chi(&w("(1,0|0)")).unwrap();
        assert_eq!(f, deformed_power_sum(1, 2, 1).unwrap());
    }

    #[test]
    fn eigenspace_examples() {
        let e = gen_eigenspace(&w("(0|0)")).unwrap();
        assert_eq!((e.dim(), e.r), (2, 1));
        assert!(e.stable && e.matrices_commute());
        assert_eq!(
            sampled_dimension(&w("(0|0)"), &BigRational::new(3.into(), 7.into())).unwrap(),
            2
        );
        let e2 = gen_eigenspace(&w("(2|0)")).unwrap();
        assert_eq!(e2.dim(), 1);
        assert!(gen_eigenspace(&w("(1|-1)")).is_err());
        let alg = image_algebra(&e).unwrap();
        assert!(alg.matches_dual_numbers(), "{alg:?}");
        let alg = image_algebra(&e2).unwrap();
        assert!(alg.matches_dual_numbers(), "{alg:?}");
        let j = eigenfunction(&e).unwrap();
        for (r, t) in e.theta.iter().enumerate().take(4) {
            assert_eq!(crate::quasi::integral_apply(r + 1, &j).unwrap(), j.scale(t));
        }
    }

    #[test]
    fn split_adds_up() {
        let e = gen_eigenspace(&w("(0|0)")).unwrap();
        let (parts, total) = spectral_split(&e.space).unwrap();
        assert_eq!(parts.iter().map(|p| p.1).sum::<usize>(), total);
    }

    #[test]
    fn power_sums_generate() {
        assert!(power_sum_generation_check(&set(&[&[1, -1], &[0, 0], &[-1, 1]]), 1, 1).unwrap());
        assert!(power_sum_generation_check(&set(&[&[0, 0]]), 1, 1).unwrap());
        let window = crate::laurent::hull_lattice_points(&orbit(&[2, 0, 0], 2));
        assert!(power_sum_generation_check(&window, 2, 1).unwrap());
        // reached only through cancellation between p_3, p_2 p_1 and p_1^3
        assert!(power_sum_generation_check(&set(&[&[2, 1], &[1, 2]]), 1, 1).unwrap());
    }
}
