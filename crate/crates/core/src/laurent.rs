//! Sparse Laurent polynomials in `x_1..x_{n+m}` over `Q(k)`.
//!
//! Variables are indexed from 0 in code. The first `n` variables form the even
//! block and the last `m` the odd block.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kfield::RatK;
use crate::linalg::Matrix;
use crate::partition::{Partition, Permutation};

/// Exponent vector of a monomial, identified with a weight.
pub type Exponent = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    m: usize,
    terms: BTreeMap<Exponent, RatK>,
}

impl LaurentPoly {
    pub fn zero(n: usize, m: usize) -> Self {
        LaurentPoly {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::constant(n, m, RatK::one())
    }

    pub fn constant(n: usize, m: usize, c: RatK) -> Self {
        Self::monomial(n, m, vec![0; n + m], c)
    }

    pub fn monomial(n: usize, m: usize, exp: Exponent, c: RatK) -> Self {
        assert_eq!(exp.len(), n + m, "exponent length");
        let mut p = Self::zero(n, m);
        p.add_term(exp, c);
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, m: usize, i: usize) -> Self {
        Self::var_pow(n, m, i, 1)
    }

    pub fn var_pow(n: usize, m: usize, i: usize, e: i64) -> Self {
        let mut exp = vec![0; n + m];
        exp[i] = e;
        Self::monomial(n, m, exp, RatK::one())
    }

    pub fn from_terms(
        n: usize,
        m: usize,
        terms: impl IntoIterator<Item = (Exponent, RatK)>,
    ) -> Self {
        let mut p = Self::zero(n, m);
        for (e, c) in terms {
            assert_eq!(e.len(), n + m, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn nvars(&self) -> usize {
        self.n + self.m
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, RatK> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponent, RatK> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> RatK {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Adds `c * x^exp` in place.
    pub fn add_term(&mut self, exp: Exponent, c: RatK) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The set `M(f)` of exponents with nonzero coefficient.
    pub fn monomials(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    fn check_dims(&self, other: &LaurentPoly) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::Domain(alloc::format!(
                "dimension mismatch {:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dims(other)?;
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatK) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n, self.m);
        }
        LaurentPoly {
            n: self.n,
            m: self.m,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.n, self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `x_i * d/dx_i`.
    pub fn euler(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                out.terms.insert(e.clone(), c.scale_int(e[i]));
            }
        }
        out
    }

    /// Substitutes `x_j := x_i`.
    pub fn substitute_eq(&self, i: usize, j: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[i] += f[j];
            f[j] = 0;
            out.add_term(f, c.clone());
        }
        out
    }

    /// Exact quotient by `x_i - x_j`.
    pub fn div_diff(&self, i: usize, j: usize) -> Result<LaurentPoly> {
        // Terms sharing all other exponents and e_i + e_j form one fiber.
        let mut fibers: BTreeMap<Exponent, BTreeMap<i64, &RatK>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            key[j] += key[i];
            key[i] = 0;
            fibers.entry(key).or_default().insert(e[i], c);
        }
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (key, fiber) in fibers {
            let s = key[j];
            let tmin = *fiber.keys().next().unwrap();
            let tmax = *fiber.keys().next_back().unwrap();
            let mut acc = RatK::zero();
            for t in tmin..=tmax {
                if let Some(c) = fiber.get(&t) {
                    acc = &acc + *c;
                }
                if t == tmax {
                    break;
                }
                if !acc.is_zero() {
                    let mut e = key.clone();
                    e[i] = t;
                    e[j] = s - 1 - t;
                    out.terms.insert(e, -&acc);
                }
            }
            if !acc.is_zero() {
                return Err(Error::NotDivisible);
            }
        }
        Ok(out)
    }

    /// Applies a permutation of variables: `x_i -> x_{w(i)}`.
    pub fn sym_apply(&self, w: &Permutation) -> LaurentPoly {
        assert_eq!(w.len(), self.nvars());
        let mut out = LaurentPoly::zero(self.n, self.m);
        for (e, c) in &self.terms {
            let mut f = vec![0; e.len()];
            for (i, &x) in e.iter().enumerate() {
                f[w.apply(i)] = x;
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    /// Invariance under `S_n x S_m`, tested on adjacent transpositions.
    pub fn sym_invariant(&self) -> bool {
        Permutation::generators(self.n, self.m)
            .iter()
            .all(|g| &self.sym_apply(g) == self)
    }

    /// The `⪯`-maximal exponents of `M(f)`.
    pub fn max_terms(&self) -> Vec<Exponent> {
        let ms = self.monomials();
        ms.iter()
            .filter(|a| !ms.iter().any(|b| b != *a && partial_leq(a, b)))
            .cloned()
            .collect()
    }

    /// The unique `⪯`-maximal exponent, if there is exactly one.
    pub fn unique_max(&self) -> Option<Exponent> {
        let mx = self.max_terms();
        (mx.len() == 1).then(|| mx.into_iter().next().unwrap())
    }

    /// All lattice points of the convex hull of `M(f)`.
    pub fn support_members(&self) -> Result<BTreeSet<Exponent>> {
        if self.is_zero() {
            return Err(Error::Domain(String::from(
                "support of the zero polynomial",
            )));
        }
        Ok(hull_lattice_points(&self.monomials()))
    }

    /// Whether every exponent of `self` lies in the convex hull of `M(other)`.
    pub fn support_within(&self, other: &LaurentPoly) -> bool {
        let pts = other.monomials();
        self.terms.keys().all(|e| in_hull(&pts, e))
    }

    /// Smallest and largest total degree of the terms.
    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let mut it = degs.peekable();
        it.peek()?;
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for d in it {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Some((lo, hi))
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(n: usize, m: usize, s: &str) -> Result<Self> {
        let mut out = LaurentPoly::zero(n, m);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for term in split_top_level(s) {
            let (coef, mono) = match term.split_once(" * ") {
                Some((c, x)) => (c.trim(), x.trim()),
                None if term.trim_start().starts_with('x') => ("1", term.trim()),
                None => (term.trim(), ""),
            };
            let c: RatK = coef.parse()?;
            let mut exp = vec![0i64; n + m];
            for factor in mono.split_whitespace() {
                let body = factor
                    .strip_prefix('x')
                    .ok_or_else(|| Error::Parse(alloc::format!("bad factor {factor:?}")))?;
                let (idx, pw) = body.split_once('^').unwrap_or((body, "1"));
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad variable {factor:?}")))?;
                let pw: i64 = pw
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("bad exponent {factor:?}")))?;
                if idx == 0 || idx > n + m {
                    return Err(Error::Parse(alloc::format!(
                        "variable index out of range in {factor:?}"
                    )));
                }
                exp[idx - 1] += pw;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b' ' if depth == 0 && s[i..].starts_with(" + ") => {
                out.push(&s[start..i]);
                i += 3;
                start = i;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending lexicographic order, `c * x1^a1 x2^a2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let cs = alloc::format!("{c}");
            if c.den().is_one() && c.num().coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                write!(f, "({cs})")?;
            } else {
                f.write_str(&cs)?;
            }
            if e.iter().any(|&x| x != 0) {
                f.write_str(" *")?;
                for (i, &x) in e.iter().enumerate() {
                    if x != 0 {
                        write!(f, " x{}^{}", i + 1, x)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&RatK::from_int(-1))
    }
}

/// `a ⪯ b`: every prefix sum of `a` is at most that of `b`.
pub fn partial_leq(a: &[i64], b: &[i64]) -> bool {
    let (mut sa, mut sb) = (0i64, 0i64);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

/// `p_s = x_1^s + ... + x_n^s + k^{-1}(x_{n+1}^s + ... + x_{n+m}^s)`.
pub fn deformed_power_sum(s: i64, n: usize, m: usize) -> Result<LaurentPoly> {
    if s == 0 {
        return Err(Error::Domain(String::from(
            "power sum index must be nonzero",
        )));
    }
    let kinv = RatK::k_pow(-1);
    let mut p = LaurentPoly::zero(n, m);
    for i in 0..n + m {
        let mut e = vec![0; n + m];
        e[i] = s;
        p.add_term(e, if i < n { RatK::one() } else { kinv.clone() });
    }
    Ok(p)
}

/// Which block of variables a symmetric function lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Even,
    Odd,
}

fn block_range(block: Block, n: usize, m: usize) -> core::ops::Range<usize> {
    match block {
        Block::Even => 0..n,
        Block::Odd => n..n + m,
    }
}

/// Complete homogeneous symmetric polynomial `h_d` in the given block.
pub fn complete_homogeneous(d: i64, block: Block, n: usize, m: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n, m);
    if d < 0 {
        return out;
    }
    let vars: Vec<usize> = block_range(block, n, m).collect();
    fn rec(vars: &[usize], rest: i64, e: &mut Exponent, out: &mut LaurentPoly) {
        match vars {
            [] => {
                if rest == 0 {
                    out.add_term(e.clone(), RatK::one());
                }
            }
            [last] => {
                e[*last] = rest;
                out.add_term(e.clone(), RatK::one());
                e[*last] = 0;
            }
            [v, tail @ ..] => {
                for t in 0..=rest {
                    e[*v] = t;
                    rec(tail, rest - t, e, out);
                }
                e[*v] = 0;
            }
        }
    }
    rec(&vars, d, &mut vec![0; n + m], &mut out);
    out
}

/// Schur polynomial `s_λ` in one block of variables, by the Jacobi-Trudi determinant.
pub fn schur_poly(lambda: &Partition, block: Block, n: usize, m: usize) -> Result<LaurentPoly> {
    let size = block_range(block, n, m).len();
    if lambda.len() > size {
        return Err(Error::Domain(alloc::format!(
            "partition {lambda} has more than {size} parts"
        )));
    }
    let l = lambda.len();
    let entries: Vec<Vec<LaurentPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| complete_homogeneous(lambda.parts()[i] - i as i64 + j as i64, block, n, m))
                .collect()
        })
        .collect();
    Ok(poly_det(&entries, n, m))
}

fn poly_det(a: &[Vec<LaurentPoly>], n: usize, m: usize) -> LaurentPoly {
    match a.len() {
        0 => LaurentPoly::one(n, m),
        1 => a[0][0].clone(),
        len => {
            let mut acc = LaurentPoly::zero(n, m);
            for j in 0..len {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPoly>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &a[0][j] * &poly_det(&minor, n, m);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Distinct rearrangements of `exp` under `S_n x S_m`, sorted.
pub fn orbit(exp: &[i64], n: usize) -> Vec<Exponent> {
    let mut even = exp[..n].to_vec();
    let mut odd = exp[n..].to_vec();
    even.sort_unstable();
    odd.sort_unstable();
    let evens = distinct_permutations(even);
    let odds = distinct_permutations(odd);
    let mut out = Vec::with_capacity(evens.len() * odds.len());
    for a in &evens {
        for b in &odds {
            let mut e = a.clone();
            e.extend_from_slice(b);
            out.push(e);
        }
    }
    out.sort();
    out
}

fn distinct_permutations(mut v: Vec<i64>) -> Vec<Vec<i64>> {
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// The dominant representative of an orbit: each block sorted decreasingly.
pub fn dominant_rep(exp: &[i64], n: usize) -> Exponent {
    let mut e = exp.to_vec();
    e[..n].sort_unstable_by(|a, b| b.cmp(a));
    e[n..].sort_unstable_by(|a, b| b.cmp(a));
    e
}

/// Orbit sum `m_ν` of a monomial under `S_n x S_m`.
pub fn orbit_sum(exp: &[i64], n: usize, m: usize) -> LaurentPoly {
    LaurentPoly::from_terms(n, m, orbit(exp, n).into_iter().map(|e| (e, RatK::one())))
}

fn to_rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Whether `p` is a convex combination of `points`, by an exact phase-one simplex.
pub fn in_hull(points: &[Exponent], p: &[i64]) -> bool {
    if points.is_empty() {
        return false;
    }
    if points.iter().any(|q| q.as_slice() == p) {
        return true;
    }
    let d = p.len();
    for c in 0..d {
        let lo = points.iter().map(|q| q[c]).min().unwrap();
        let hi = points.iter().map(|q| q[c]).max().unwrap();
        if p[c] < lo || p[c] > hi {
            return false;
        }
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(d + 1);
    for c in 0..d {
        rows.push(points.iter().map(|q| to_rational(q[c])).collect());
        rhs.push(to_rational(p[c]));
    }
    rows.push(vec![BigRational::one(); points.len()]);
    rhs.push(BigRational::one());
    lp_feasible(rows, rhs)
}

/// Feasibility of `A x = b, x >= 0`.
fn lp_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let nv = a[0].len();
    for i in 0..rows {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let width = nv + rows;
    // tableau: rows of [A | I | b], objective row last
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r = a[i].clone();
            r.extend((0..rows).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut obj = vec![BigRational::zero(); width + 1];
    for r in &t {
        for j in 0..nv {
            obj[j] += &r[j];
        }
        obj[width] += &r[width];
    }
    let mut basis: Vec<usize> = (nv..width).collect();
    while let Some(enter) = (0..width).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let piv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let prow = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[pr] = enter;
    }
    obj[width].is_zero()
}

/// Linear equations `c . x = c . v0` satisfied by all points (rational coefficients).
fn affine_hull_equations(points: &[Exponent]) -> Vec<Vec<RatK>> {
    let d = points[0].len();
    let base = &points[0];
    let diffs: Vec<Vec<RatK>> = points[1..]
        .iter()
        .map(|q| {
            q.iter()
                .zip(base)
                .map(|(a, b)| RatK::from_int(a - b))
                .collect()
        })
        .collect();
    if diffs.is_empty() {
        return (0..d)
            .map(|c| (0..d).map(|j| RatK::from_int((c == j) as i64)).collect())
            .collect();
    }
    Matrix::from_rows(diffs).nullspace()
}

/// Lattice points of the convex hull, by bounding-box enumeration with an
/// affine-hull prefilter and an exact LP membership test.
pub fn hull_lattice_points(points: &[Exponent]) -> BTreeSet<Exponent> {
    let mut out = BTreeSet::new();
    if points.is_empty() {
        return out;
    }
    let d = points[0].len();
    let lo: Vec<i64> = (0..d)
        .map(|c| points.iter().map(|q| q[c]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|c| points.iter().map(|q| q[c]).max().unwrap())
        .collect();
    let eqs = affine_hull_equations(points);
    let target: Vec<RatK> = eqs.iter().map(|c| dot_int(c, &points[0])).collect();
    let mut cur = lo.clone();
    if d == 0 {
        out.insert(Vec::new());
        return out;
    }
    loop {
        if eqs.iter().zip(&target).all(|(c, t)| &dot_int(c, &cur) == t) && in_hull(points, &cur) {
            out.insert(cur.clone());
        }
        let mut c = 0;
        loop {
            if c == d {
                return out;
            }
            if cur[c] < hi[c] {
                cur[c] += 1;
                break;
            }
            cur[c] = lo[c];
            c += 1;
        }
    }
}

fn dot_int(c: &[RatK], x: &[i64]) -> RatK {
    let mut acc = RatK::zero();
    for (a, &b) in c.iter().zip(x) {
        if b != 0 && !a.is_zero() {
            acc = &acc + &a.scale_int(b);
        }
    }
    acc
}

/// Lattice points in a box intersected with a hyperplane `sum = degree`.
pub fn box_slice(lo: &[i64], hi: &[i64], degree: i64) -> Vec<Exponent> {
    let d = lo.len();
    let mut out = Vec::new();
    if d == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    fn rec(
        c: usize,
        lo: &[i64],
        hi: &[i64],
        rest: i64,
        cur: &mut Exponent,
        out: &mut Vec<Exponent>,
    ) {
        let d = lo.len();
        if c + 1 == d {
            if rest >= lo[c] && rest <= hi[c] {
                cur[c] = rest;
                out.push(cur.clone());
            }
            return;
        }
        let min_tail: i64 = lo[c + 1..].iter().sum();
        let max_tail: i64 = hi[c + 1..].iter().sum();
        for v in lo[c]..=hi[c] {
            let r = rest - v;
            if r < min_tail || r > max_tail {
                continue;
            }
            cur[c] = v;
            rec(c + 1, lo, hi, r, cur, out);
        }
    }
    rec(0, lo, hi, degree, &mut vec![0; d], &mut out);
    out
}
