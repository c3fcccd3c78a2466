//! Deformed root system data: the form, roots, reflections, `ρ`, the
//! Bernoulli generators `b_r` and the Harish-Chandra values `θ_χ(L_r)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kfield::RatK;
use crate::quasi::parity;

/// A vector of `V` in the basis `ε_1..ε_{n+m}`.
pub type FormVector = Vec<RatK>;

/// An integral weight `(a_1..a_n | b_1..b_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    n: usize,
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(n: usize, m: usize, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != n + m {
            return Err(Error::Domain(alloc::format!(
                "weight needs {} entries, got {}",
                n + m,
                coords.len()
            )));
        }
        Ok(Weight { n, coords })
    }

    pub fn from_blocks(a: &[i64], b: &[i64]) -> Self {
        let mut coords = a.to_vec();
        coords.extend_from_slice(b);
        Weight { n: a.len(), coords }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Weight {
            n,
            coords: vec![0; n + m],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.coords.len() - self.n
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m())
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn a(&self) -> &[i64] {
        &self.coords[..self.n]
    }

    pub fn b(&self) -> &[i64] {
        &self.coords[self.n..]
    }

    /// Weakly decreasing within each block.
    pub fn is_dominant(&self) -> bool {
        self.a().windows(2).all(|w| w[0] >= w[1]) && self.b().windows(2).all(|w| w[0] >= w[1])
    }

    /// Dominant and no odd positive root with `(χ+ρ,α) = ½(α,α)`.
    pub fn is_regular(&self) -> bool {
        self.is_dominant() && singular_plus(self).is_empty()
    }

    pub fn to_form_vector(&self) -> FormVector {
        self.coords.iter().map(|&c| RatK::from_int(c)).collect()
    }

    pub fn add(&self, other: &[i64]) -> Weight {
        Weight {
            n: self.n,
            coords: self.coords.iter().zip(other).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// All dominant weights with entries in `-bound..=bound`.
    pub fn dominant_box(n: usize, m: usize, bound: i64) -> Vec<Weight> {
        fn block(len: usize, hi: i64, bound: i64) -> Vec<Vec<i64>> {
            if len == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for first in (-bound..=hi).rev() {
                for mut rest in block(len - 1, first, bound) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let evens = block(n, bound, bound);
        let odds = block(m, bound, bound);
        let mut out = Vec::with_capacity(evens.len() * odds.len());
        for a in &evens {
            for b in &odds {
                out.push(Weight::from_blocks(a, b));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| {
            xs.iter()
                .map(|x| alloc::format!("{x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "({}|{})", join(self.a()), join(self.b()))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `(a1,...,an|b1,...,bm)`; spaces are allowed.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(alloc::format!(
                "malformed weight {s:?}; expected (a1,...|b1,...)"
            ))
        };
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let parse_block = |b: &str| -> Result<Vec<i64>> {
            let b = b.trim();
            if b.is_empty() {
                return Ok(Vec::new());
            }
            b.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let a = parse_block(left)?;
        let b = parse_block(right)?;
        if a.len() + b.len() == 0 {
            return Err(bad());
        }
        Ok(Weight::from_blocks(&a, &b))
    }
}

/// `(u, v) = Σ u_i v_i k^{p(i)}`.
pub fn inner(n: usize, u: &[RatK], v: &[RatK]) -> RatK {
    assert_eq!(u.len(), v.len());
    let k = RatK::k();
    let mut acc = RatK::zero();
    for (i, (a, b)) in u.iter().zip(v).enumerate() {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let t = a * b;
        acc = if parity(n, i) == 1 {
            &acc + &(&t * &k)
        } else {
            &acc + &t
        };
    }
    acc
}

/// The root `ε_i - ε_j` (0-based indices, `i != j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Domain(String::from(
                "a root needs two distinct indices",
            )));
        }
        Ok(Root { i, j })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn is_odd(&self, n: usize) -> bool {
        parity(n, self.i) != parity(n, self.j)
    }

    pub fn vector(&self, n: usize, m: usize) -> FormVector {
        let mut v = vec![RatK::zero(); n + m];
        v[self.i] = RatK::one();
        v[self.j] = RatK::from_int(-1);
        v
    }

    pub fn int_vector(&self, len: usize) -> Vec<i64> {
        let mut v = vec![0; len];
        v[self.i] = 1;
        v[self.j] = -1;
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i + 1, self.j + 1)
    }
}

/// All odd positive roots `ε_i - ε_{n+j}`, ordered by `(i, j)`.
pub fn odd_positive_roots(n: usize, m: usize) -> Vec<Root> {
    crate::quasi::odd_pairs(n, m)
        .map(|(i, j)| Root { i, j })
        .collect()
}

/// All positive roots.
pub fn positive_roots(n: usize, m: usize) -> Vec<Root> {
    let t = n + m;
    (0..t)
        .flat_map(|i| (i + 1..t).map(move |j| Root { i, j }))
        .collect()
}

/// The deformed Weyl vector
/// `ρ_i = ½(k(2i-n-1) - m)` and `ρ_{n+j} = ½(k^{-1}(2j-m-1) + n)`.
pub fn rho(n: usize, m: usize) -> FormVector {
    let half = RatK::from_ratio(1, 2).unwrap();
    let (ni, mi) = (n as i64, m as i64);
    let mut v = Vec::with_capacity(n + m);
    for i in 1..=ni {
        let t = &RatK::k().scale_int(2 * i - ni - 1) - &RatK::from_int(mi);
        v.push(&t * &half);
    }
    for j in 1..=mi {
        let t = &RatK::k_pow(-1).scale_int(2 * j - mi - 1) + &RatK::from_int(ni);
        v.push(&t * &half);
    }
    v
}

/// `s_α(v) = v - 2(v,α)/(α,α) α`.
pub fn reflect(n: usize, alpha: &Root, v: &[RatK]) -> FormVector {
    let m = v.len() - n;
    let a = alpha.vector(n, m);
    let c = inner(n, v, &a)
        .scale_int(2)
        .checked_div(&inner(n, &a, &a))
        .expect("(α,α) is nonzero for formal k");
    let mut out = v.to_vec();
    out[alpha.i] = &out[alpha.i] - &c;
    out[alpha.j] = &out[alpha.j] + &c;
    out
}

/// `s_α ∘ v = s_α(v + ρ) - ρ`.
pub fn affine_reflect(n: usize, alpha: &Root, v: &[RatK]) -> FormVector {
    let m = v.len() - n;
    let r = rho(n, m);
    let shifted: FormVector = v.iter().zip(&r).map(|(a, b)| a + b).collect();
    reflect(n, alpha, &shifted)
        .iter()
        .zip(&r)
        .map(|(a, b)| a - b)
        .collect()
}

/// `(χ+ρ, α) + sign·½(α, α)`.
pub fn l_value(chi: &Weight, alpha: &Root, sign: i64) -> RatK {
    let (n, m) = chi.dims();
    let a = alpha.vector(n, m);
    let r = rho(n, m);
    let v: FormVector = chi
        .to_form_vector()
        .iter()
        .zip(&r)
        .map(|(x, y)| x + y)
        .collect();
    let half_len = inner(n, &a, &a)
        .checked_div(&RatK::from_int(2 * sign))
        .unwrap();
    &inner(n, &v, &a) + &half_len
}

/// Odd positive roots with `(χ+ρ,α) + ½(α,α) = 0`.
pub fn singular_minus(chi: &Weight) -> Vec<Root> {
    let (n, m) = chi.dims();
    odd_positive_roots(n, m)
        .into_iter()
        .filter(|a| l_value(chi, a, 1).is_zero())
        .collect()
}

/// Odd positive roots with `(χ+ρ,α) - ½(α,α) = 0`.
pub fn singular_plus(chi: &Weight) -> Vec<Root> {
    let (n, m) = chi.dims();
    odd_positive_roots(n, m)
        .into_iter()
        .filter(|a| l_value(chi, a, -1).is_zero())
        .collect()
}

/// Bernoulli numbers `B_0..B_r` with `B_1 = -1/2`.
pub fn bernoulli_numbers(r: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(r + 1);
    b.push(BigRational::one());
    for t in 1..=r {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += bj * BigRational::from_integer(binomial(BigInt::from(t + 1), BigInt::from(j)));
        }
        b.push(-s / BigRational::from_integer(BigInt::from(t + 1)));
    }
    b
}

/// Coefficients of the Bernoulli polynomial `B_r(x)`, index = power of `x`.
pub fn bernoulli_poly(r: usize) -> Vec<BigRational> {
    let b = bernoulli_numbers(r);
    let mut c = vec![BigRational::zero(); r + 1];
    for (t, bt) in b.iter().enumerate() {
        c[r - t] = bt * BigRational::from_integer(binomial(BigInt::from(r), BigInt::from(t)));
    }
    c
}

fn eval_rational_poly(coeffs: &[BigRational], x: &RatK) -> RatK {
    let mut acc = RatK::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + &RatK::from_rational(c);
    }
    acc
}

/// `b_r` at an arbitrary point of `V`.
pub fn b_gen_eval_vec(r: usize, n: usize, xi: &[RatK]) -> RatK {
    let m = xi.len() - n;
    let br = bernoulli_poly(r);
    let k = RatK::k();
    let kinv = RatK::k_pow(-1);
    let mut even = RatK::zero();
    for (i, x) in xi.iter().take(n).enumerate() {
        let shift = k.scale_int(i as i64);
        let d = &eval_rational_poly(&br, &(x + &shift)) - &eval_rational_poly(&br, &shift);
        even = &even + &d;
    }
    let mut odd = RatK::zero();
    for j in 0..m {
        let shift = &kinv.scale_int(j as i64) + &RatK::from_int(n as i64);
        let d = &eval_rational_poly(&br, &(&xi[n + j] + &shift)) - &eval_rational_poly(&br, &shift);
        odd = &odd + &d;
    }
    &even + &(&odd * &RatK::k_pow(r as i32 - 1))
}

/// `b_r^{(n,m)}(χ)` by the Bernoulli-sum formula.
pub fn b_gen_eval(r: usize, chi: &Weight) -> RatK {
    b_gen_eval_vec(r, chi.n(), &chi.to_form_vector())
}

/// `θ_χ(L_r)` for `r = 1..=rmax`, read off as the coefficient at `x^χ` of
/// `L_r` applied to a quasi-invariant whose unique maximal term is `x^χ`.
pub fn theta_all(chi: &Weight, rmax: usize) -> Result<Vec<RatK>> {
    if !chi.is_dominant() {
        return Err(Error::Domain(alloc::format!("{chi} is not dominant")));
    }
    let f = crate::spectral::seed(chi);
    let lead = f.coeff(chi.coords());
    let images = crate::quasi::integrals_upto(rmax, &f)?;
    images
        .iter()
        .map(|g| g.coeff(chi.coords()).checked_div(&lead))
        .collect()
}

/// `θ_χ(L_r)`.
pub fn theta_eval(chi: &Weight, r: usize) -> Result<RatK> {
    if r == 0 {
        return Ok(RatK::one());
    }
    Ok(theta_all(chi, r)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(s: &str) -> RatK {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn form_examples() {
        let e =
            |i: usize| -> FormVector { (0..2).map(|j| RatK::from_int((i == j) as i64)).collect() };
        assert_eq!(inner(1, &e(0), &e(0)), RatK::one());
        assert_eq!(inner(1, &e(1), &e(1)), RatK::k());
        let a = Root::new(0, 1).unwrap().vector(1, 1);
        assert_eq!(inner(1, &a, &a), q("1+k"));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(1, 1), vec![q("-1/2"), q("1/2")]);
        assert_eq!(rho(2, 1), vec![q("(-k-1)/2"), q("(k-1)/2"), q("1")]);
        assert_eq!(rho(1, 0), vec![RatK::zero()]);
    }

    #[test]
    fn reflection_examples() {
        let a = Root::new(0, 2).unwrap();
        let v = vec![q("k"), q("3"), q("1")];
        assert_eq!(
            reflect(2, &a, &v),
            reflect(2, &a, &reflect(2, &a, &reflect(2, &a, &v)))
        );
        let fixed = vec![q("1"), q("5"), q("1/k")];
        assert_eq!(reflect(2, &a, &fixed), fixed);
        let r = rho(2, 1);
        let minus_rho: FormVector = r.iter().map(|x| -x).collect();
        assert_eq!(affine_reflect(2, &a, &minus_rho), minus_rho);
        // s_α ∘ (0|0) = (0|0) - 2 l(0)/(1+k) α with (ρ,α) = -1/2 - k/2
        let img = affine_reflect(1, &Root::new(0, 1).unwrap(), &[q("0"), q("0")]);
        assert_eq!(img, vec![q("1"), q("-1")]);
    }

    #[test]
    fn singular_examples() {
        assert_eq!(singular_minus(&w("(0|0)")), vec![Root { i: 0, j: 1 }]);
        assert!(singular_minus(&w("(2|0)")).is_empty());
        assert_eq!(singular_plus(&w("(1|-1)")), vec![Root { i: 0, j: 1 }]);
        assert!(!w("(1|-1)").is_regular());
        assert!(w("(0|0)").is_regular());
    }

    #[test]
    fn bernoulli_examples() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(bernoulli_poly(1), vec![r(-1, 2), r(1, 1)]);
        assert_eq!(bernoulli_poly(2), vec![r(1, 6), r(-1, 1), r(1, 1)]);
        for deg in 1..8 {
            let c = bernoulli_poly(deg);
            for x in -3..4 {
                let x = RatK::from_int(x);
                let diff =
                    &eval_rational_poly(&c, &(&x + &RatK::one())) - &eval_rational_poly(&c, &x);
                let expect = &x.pow(deg as i32 - 1).unwrap().scale_int(deg as i64);
                assert_eq!(&diff, expect);
            }
        }
    }

    #[test]
    fn b_gen_examples() {
        for s in ["(2,1|0)", "(0,-1|3)", "(1|-1)"] {
            let chi = w(s);
            assert_eq!(
                b_gen_eval(1, &chi),
                RatK::from_int(chi.coords().iter().sum())
            );
        }
        assert!(b_gen_eval(1, &w("(1|-1)")).is_zero());
        for r in 1..6 {
            assert!(b_gen_eval(r, &w("(0,0|0)")).is_zero());
            assert_eq!(b_gen_eval(r, &w("(1|-1)")), b_gen_eval(r, &w("(0|0)")));
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(w("(1,0|3,-1)").is_dominant());
        assert!(!w("(0,1|0)").is_dominant());
        assert_eq!(Weight::dominant_box(1, 1, 1).len(), 9);
        assert_eq!(Weight::dominant_box(2, 0, 1).len(), 6);
    }

    /// `e* A^r e` for the triangular constant matrix obtained by letting the
    /// Moser matrix act on `x^χ` and keeping the leading terms.
    fn theta_oracle(chi: &Weight, r: usize) -> RatK {
        let (n, m) = chi.dims();
        let t = n + m;
        let kp = |i: usize, e: i32| RatK::k_pow(e * parity(n, i));
        let mut a = crate::linalg::Matrix::zeros(t, t);
        for i in 0..t {
            let mut d = &kp(i, 1) * &RatK::from_int(chi.coords()[i]);
            for j in i + 1..t {
                let c = &RatK::k() * &kp(j, -1);
                d = &d - &c;
                a.set(i, j, c);
            }
            a.set(i, i, d);
        }
        let mut v: Vec<RatK> = vec![RatK::one(); t];
        for _ in 0..r {
            v = a.mul_vec(&v);
        }
        (0..t).fold(RatK::zero(), |acc, i| &acc + &(&kp(i, -1) * &v[i]))
    }

    #[test]
    fn theta_matches_constant_matrix_oracle() {
        for s in [
            "(0|0)", "(1|-1)", "(2|1)", "(1,0|0)", "(1,1|-1)", "(2,-1|3)", "(0|1,0)",
        ] {
            let chi = w(s);
            let th = theta_all(&chi, 4).unwrap();
            for r in 1..=4 {
                assert_eq!(th[r - 1], theta_oracle(&chi, r), "{s} r={r}");
            }
        }
        let (a, b) = (3i64, -2i64);
        let expect = RatK::from_int(a * a - a) + &(&RatK::k() * &RatK::from_int(b + b * b));
        assert_eq!(
            theta_eval(&Weight::from_blocks(&[a], &[b]), 2).unwrap(),
            expect
        );
    }

    #[test]
    fn theta_constant_on_simple_class() {
        for r in 1..=4 {
            assert_eq!(
                theta_eval(&w("(0|0)"), r).unwrap(),
                theta_eval(&w("(1|-1)"), r).unwrap()
            );
        }
        assert!(theta_eval(&w("(0|0)"), 1).unwrap().is_zero());
    }

    #[test]
    fn weight_text() {
        assert_eq!(w(" ( 1, 0 | 0 , -1 ) ").to_string(), "(1,0|0,-1)");
        assert!("(0|".parse::<Weight>().is_err());
        assert!("(|)".parse::<Weight>().is_err());
        assert_eq!(w("(|2)").dims(), (0, 1));
    }
}
