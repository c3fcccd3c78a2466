//! Quasi-invariants, quasi-homomorphisms, the quantum Moser matrix and the
//! commuting integrals `L_r = e* L^r e`.
//!
//! The directional derivative along `ε_i` is `k^{p(i)} x_i ∂/∂x_i`, so that
//! `∂_α(v) = (α, v)` for the deformed form. With this convention `L_1` is the
//! plain Euler operator.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kfield::RatK;
use crate::laurent::LaurentPoly;
use crate::partition::Permutation;

/// Parity of index `i` (0-based): 0 in the even block, 1 in the odd block.
pub fn parity(n: usize, i: usize) -> i32 {
    (i >= n) as i32
}

/// `∂_{ε_i} f = k^{p(i)} x_i ∂f/∂x_i`.
pub fn dir_derivative(i: usize, f: &LaurentPoly) -> LaurentPoly {
    let (n, _) = f.dims();
    let e = f.euler(i);
    if parity(n, i) == 1 {
        e.scale(&RatK::k())
    } else {
        e
    }
}

/// `x_i ∂f/∂x_i - k x_j ∂f/∂x_j`, the derivative along an odd root.
fn odd_root_derivative(f: &LaurentPoly, i: usize, j: usize) -> LaurentPoly {
    &f.euler(i) - &f.euler(j).scale(&RatK::k())
}

fn vanishes_on(f: &LaurentPoly, i: usize, j: usize) -> bool {
    f.substitute_eq(i, j).is_zero()
}

/// Odd positive pairs `(i, j)` with `i < n <= j`.
pub fn odd_pairs(n: usize, m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (n..n + m).map(move |j| (i, j)))
}

/// `S_n x S_m` invariance plus vanishing of `x_i∂_i f - k x_j∂_j f` on every
/// hyperplane `x_i = x_j` with `i` even and `j` odd.
pub fn is_quasi_invariant(f: &LaurentPoly) -> bool {
    let (n, m) = f.dims();
    f.sym_invariant()
        && odd_pairs(n, m).all(|(i, j)| vanishes_on(&odd_root_derivative(f, i, j), i, j))
}

/// A linear map `V -> Laurent polynomials`, stored by its values on `ε_1..ε_{n+m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiMap {
    images: Vec<LaurentPoly>,
}

impl QuasiMap {
    pub fn new(images: Vec<LaurentPoly>) -> Result<Self> {
        let Some(first) = images.first() else {
            return Err(Error::Domain(alloc::string::String::from(
                "a map needs at least one image",
            )));
        };
        let dims = first.dims();
        if dims.0 + dims.1 != images.len() || images.iter().any(|p| p.dims() != dims) {
            return Err(Error::Domain(alloc::string::String::from(
                "images must match the number of variables",
            )));
        }
        Ok(QuasiMap { images })
    }

    /// The map sending every `ε_i` to `f`.
    pub fn constant(f: &LaurentPoly) -> Self {
        QuasiMap {
            images: alloc::vec![f.clone(); f.nvars()],
        }
    }

    pub fn images(&self) -> &[LaurentPoly] {
        &self.images
    }

    pub fn dims(&self) -> (usize, usize) {
        self.images[0].dims()
    }

    /// `e* φ = Σ k^{-p(i)} φ(ε_i)`.
    pub fn contract(&self) -> LaurentPoly {
        let (n, m) = self.dims();
        let kinv = RatK::k_pow(-1);
        let mut acc = LaurentPoly::zero(n, m);
        for (i, p) in self.images.iter().enumerate() {
            acc = if parity(n, i) == 1 {
                &acc + &p.scale(&kinv)
            } else {
                &acc + p
            };
        }
        acc
    }
}

/// Checks equivariance under `S_n x S_m` and the divisibility conditions
/// along every odd positive root.
pub fn is_quasi_homomorphism(phi: &QuasiMap) -> bool {
    let (n, m) = phi.dims();
    let im = &phi.images;
    let equivariant = Permutation::generators(n, m)
        .iter()
        .all(|w| (0..n + m).all(|i| im[w.apply(i)] == im[i].sym_apply(w)));
    if !equivariant {
        return false;
    }
    let kinv = RatK::k_pow(-1);
    odd_pairs(n, m).all(|(i, j)| {
        if !vanishes_on(&(&im[i] - &im[j]), i, j) {
            return false;
        }
        let perp = &im[i] + &im[j].scale(&kinv);
        vanishes_on(&odd_root_derivative(&perp, i, j), i, j)
            && (0..n + m)
                .filter(|&s| s != i && s != j)
                .all(|s| vanishes_on(&odd_root_derivative(&im[s], i, j), i, j))
    })
}

/// One application of the quantum Moser matrix:
/// `ψ(ε_i) = ∂_{ε_i} φ(ε_i) - Σ_{j≠i} k^{1-p(j)} x_i (φ(ε_i) - φ(ε_j)) / (x_i - x_j)`.
pub fn moser_apply(phi: &QuasiMap) -> Result<QuasiMap> {
    let (n, m) = phi.dims();
    let total = n + m;
    let im = &phi.images;
    let mut out: Vec<LaurentPoly> = (0..total).map(|i| dir_derivative(i, &im[i])).collect();
    let k = RatK::k();
    for i in 0..total {
        for j in i + 1..total {
            let diff = &im[i] - &im[j];
            if diff.is_zero() {
                continue;
            }
            // one quotient serves both (i, j) and (j, i)
            let q = diff.div_diff(i, j).map_err(|_| {
                Error::Domain(alloc::string::String::from(
                    "input not a quasi-homomorphism",
                ))
            })?;
            let qi = q.shift(&unit(total, i));
            let qj = q.shift(&unit(total, j));
            let ci = if parity(n, j) == 1 {
                RatK::one()
            } else {
                k.clone()
            };
            let cj = if parity(n, i) == 1 {
                RatK::one()
            } else {
                k.clone()
            };
            out[i] = &out[i] - &qi.scale(&ci);
            out[j] = &out[j] - &qj.scale(&cj);
        }
    }
    Ok(QuasiMap { images: out })
}

fn unit(len: usize, i: usize) -> Vec<i64> {
    let mut e = alloc::vec![0; len];
    e[i] = 1;
    e
}

/// `L_1 f, ..., L_rmax f`, sharing the repeated Moser steps.
pub fn integrals_upto(rmax: usize, f: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
    let mut phi = QuasiMap::constant(f);
    let mut out = Vec::with_capacity(rmax);
    for _ in 0..rmax {
        phi = moser_apply(&phi)?;
        out.push(phi.contract());
    }
    Ok(out)
}

/// `L_r f = e* L^r e f` for a quasi-invariant `f`.
pub fn integral_apply(r: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
    if r == 0 {
        return Ok(f.clone());
    }
    Ok(integrals_upto(r, f)?.pop().unwrap())
}

/// The explicit second-order operator
/// `Σ k^{p(i)} (x_i∂_i)^2 - Σ_{i<j} k^{1-p(i)-p(j)} (x_i+x_j)/(x_i-x_j) (k^{p(i)} x_i∂_i - k^{p(j)} x_j∂_j)`.
///
/// The coefficient of the odd-odd terms is negative here; with a positive
/// sign it does not preserve quasi-invariants once `m >= 2`.
pub fn cms2_apply(f: &LaurentPoly) -> Result<LaurentPoly> {
    cms2_with_odd_sign(f, -1)
}

/// The same operator with a chosen sign on the odd-odd sum; kept for comparison.
pub fn cms2_with_odd_sign(f: &LaurentPoly, odd_sign: i64) -> Result<LaurentPoly> {
    let (n, m) = f.dims();
    let total = n + m;
    let k = RatK::k();
    let eul: Vec<LaurentPoly> = (0..total).map(|i| f.euler(i)).collect();
    let mut acc = LaurentPoly::zero(n, m);
    for (i, e) in eul.iter().enumerate() {
        let sq = e.euler(i);
        acc = if parity(n, i) == 1 {
            &acc + &sq.scale(&k)
        } else {
            &acc + &sq
        };
    }
    for i in 0..total {
        for j in i + 1..total {
            let (pi, pj) = (parity(n, i), parity(n, j));
            let di = if pi == 1 {
                eul[i].scale(&k)
            } else {
                eul[i].clone()
            };
            let dj = if pj == 1 {
                eul[j].scale(&k)
            } else {
                eul[j].clone()
            };
            let diff = &di - &dj;
            if diff.is_zero() {
                continue;
            }
            let q = diff.div_diff(i, j).map_err(|_| Error::NotQuasiInvariant)?;
            let sum = &q.shift(&unit(total, i)) + &q.shift(&unit(total, j));
            let mut c = RatK::k_pow(1 - pi - pj);
            if pi + pj == 2 && odd_sign > 0 {
                c = -c;
            }
            acc = &acc - &sum.scale(&c);
        }
    }
    Ok(acc)
}

/// `L_r L_s f == L_s L_r f`.
pub fn commute_check(r: usize, s: usize, f: &LaurentPoly) -> Result<bool> {
    let a = integral_apply(r, &integral_apply(s, f)?)?;
    let b = integral_apply(s, &integral_apply(r, f)?)?;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::deformed_power_sum;

    fn lp(n: usize, m: usize, s: &str) -> LaurentPoly {
        LaurentPoly::parse(n, m, s).unwrap()
    }

    fn p(s: i64, n: usize, m: usize) -> LaurentPoly {
        deformed_power_sum(s, n, m).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(dir_derivative(1, &lp(1, 1, "x2")), lp(1, 1, "k * x2"));
        assert_eq!(dir_derivative(0, &lp(1, 1, "x1^3")), lp(1, 1, "3 * x1^3"));
        assert!(dir_derivative(0, &LaurentPoly::one(1, 1)).is_zero());
    }

    #[test]
    fn quasi_invariance_examples() {
        assert!(is_quasi_invariant(&p(1, 1, 1)));
        assert!(!is_quasi_invariant(&lp(1, 1, "x1 + x2")));
        assert!(is_quasi_invariant(&LaurentPoly::one(1, 1)));
        assert!(!is_quasi_invariant(&lp(2, 1, "x1")));
    }

    #[test]
    fn quasi_homomorphism_examples() {
        let f = &p(1, 2, 1) * &p(-1, 2, 1);
        assert!(is_quasi_homomorphism(&QuasiMap::constant(&f)));
        let id = QuasiMap::new(alloc::vec![lp(1, 1, "x1"), lp(1, 1, "x2")]).unwrap();
        assert!(is_quasi_homomorphism(&id));
        let bad = QuasiMap::new(alloc::vec![lp(1, 1, "x2"), LaurentPoly::zero(1, 1)]).unwrap();
        assert!(!is_quasi_homomorphism(&bad));
    }

    #[test]
    fn moser_step_on_constant_map_is_derivative() {
        let f = &p(2, 2, 1) + &p(-1, 2, 1);
        let psi = moser_apply(&QuasiMap::constant(&f)).unwrap();
        for i in 0..3 {
            assert_eq!(psi.images()[i], dir_derivative(i, &f));
        }
        let zero = QuasiMap::constant(&LaurentPoly::zero(1, 1));
        assert!(moser_apply(&zero)
            .unwrap()
            .images()
            .iter()
            .all(LaurentPoly::is_zero));
    }

    #[test]
    fn moser_step_on_identity_embedding() {
        // ψ(ε_1) = x_1 - x_1(x_1 - x_2)/(x_1 - x_2) = 0, ψ(ε_2) = k x_2 - k x_2 = 0.
        let id = QuasiMap::new(alloc::vec![lp(1, 1, "x1"), lp(1, 1, "x2")]).unwrap();
        let psi = moser_apply(&id).unwrap();
        assert!(psi.images()[0].is_zero());
        assert!(psi.images()[1].is_zero());
    }

    #[test]
    fn first_integral_is_euler() {
        for s in [-2, -1, 1, 3] {
            let f = p(s, 2, 1);
            assert_eq!(integral_apply(1, &f).unwrap(), f.scale(&RatK::from_int(s)));
        }
        let g = &p(1, 1, 1) * &p(-1, 1, 1);
        assert!(integral_apply(1, &g).unwrap().is_zero());
    }

    #[test]
    fn cms2_examples() {
        assert!(cms2_apply(&LaurentPoly::one(1, 1)).unwrap().is_zero());
        // classical A_1: L(x1 + x2) = (x1 + x2) - k(x1 + x2)(x1 - x2)/(x1 - x2) = (1 - k)(x1 + x2)
        let f = lp(2, 0, "x1 + x2");
        assert_eq!(cms2_apply(&f).unwrap(), f.scale(&"1-k".parse().unwrap()));
        assert_eq!(
            cms2_apply(&lp(1, 1, "x1 + x2")),
            Err(Error::NotQuasiInvariant)
        );
    }

    #[test]
    fn cms2_is_the_second_integral() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let f = &(&p(1, n, m) * &p(1, n, m)) + &p(-1, n, m);
            assert_eq!(
                cms2_apply(&f).unwrap(),
                integral_apply(2, &f).unwrap(),
                "({n},{m})"
            );
        }
    }

    #[test]
    fn positive_odd_sign_leaves_quasi_invariants() {
        let (n, m) = (1, 2);
        let f = &(&p(1, n, m) * &p(1, n, m)) + &p(-1, n, m);
        let plus = cms2_with_odd_sign(&f, 1).unwrap();
        assert!(!is_quasi_invariant(&plus));
        assert!(is_quasi_invariant(&cms2_apply(&f).unwrap()));
    }

    #[test]
    fn small_commutation() {
        let f = &p(1, 1, 1) * &p(-1, 1, 1);
        assert!(commute_check(1, 2, &f).unwrap());
        assert!(commute_check(2, 3, &LaurentPoly::one(2, 1)).unwrap());
    }
}
