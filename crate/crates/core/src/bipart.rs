//! Bipartitions in the `(n, m)` cross and their bijection with dominant weights.

use alloc::string::String;
use alloc::vec::Vec;

use crate::diagram::{decode, gamma_paths, walk, Point};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rootsys::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bipartition {
    pub lambda: Partition,
    pub mu: Partition,
}

impl Bipartition {
    pub fn new(lambda: Partition, mu: Partition) -> Self {
        Bipartition { lambda, mu }
    }
}

/// `λ ∈ H(n, m)`, i.e. `λ_{n+1} ≤ m`.
pub fn in_hook(lambda: &Partition, n: usize, m: usize) -> bool {
    lambda.part(n + 1) <= m as i64
}

/// The set `H(λ, μ) = {(i, j) : λ ∈ H(i, m-j), μ ∈ H(n-i, j)}`.
pub fn hook_pairs(bp: &Bipartition, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=m {
            if in_hook(&bp.lambda, i, m - j) && in_hook(&bp.mu, n - i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn in_cross(bp: &Bipartition, n: usize, m: usize) -> bool {
    !hook_pairs(bp, n, m).is_empty()
}

fn not_in_cross(n: usize, m: usize) -> Error {
    Error::Domain(alloc::format!("not in ({n},{m}) cross"))
}

/// The extremal pair `(p, s)`.
pub fn extremal_pair(bp: &Bipartition, n: usize, m: usize) -> Result<(usize, usize)> {
    let pairs = hook_pairs(bp, n, m);
    let p = pairs
        .iter()
        .map(|&(i, _)| i)
        .max()
        .ok_or_else(|| not_in_cross(n, m))?;
    let s = pairs
        .iter()
        .filter(|&&(i, _)| i == p)
        .map(|&(_, j)| j)
        .max()
        .expect("p is attained");
    Ok((p, s))
}

/// `F(λ, μ) = (λ̃, μ̃)` together with `(ñ, m̃)`.
pub fn f_map(bp: &Bipartition, n: usize, m: usize) -> Result<(Bipartition, usize, usize)> {
    if !in_cross(bp, n, m) {
        return Err(not_in_cross(n, m));
    }
    let cut = bp.lambda.part(n + 1);
    let lambda = Partition::new(
        bp.lambda
            .parts()
            .iter()
            .map(|&x| (x - cut).max(0))
            .collect(),
    )?;
    let mu_conj = bp.mu.conjugate();
    let cut_mu = mu_conj.part(m + 1);
    let mu = Partition::new(
        mu_conj
            .parts()
            .iter()
            .map(|&x| (x - cut_mu).max(0))
            .collect(),
    )?
    .conjugate();
    Ok((
        Bipartition { lambda, mu },
        n - cut_mu as usize,
        m - cut as usize,
    ))
}

/// The algebraic map `π : Cr(n, m) → X⁺(n, m)`.
pub fn pi_map(bp: &Bipartition, n: usize, m: usize) -> Result<Weight> {
    let (p, s) = extremal_pair(bp, n, m)?;
    let (q, r) = (n - p, m - s);
    let (lam, mu) = (&bp.lambda, &bp.mu);
    let (lam_c, mu_c) = (lam.conjugate(), mu.conjugate());
    let mut a: Vec<i64> = (1..=p).map(|i| lam.part(i)).collect();
    a.extend((1..=q).rev().map(|i| m as i64 - mu.part(i)));
    let mut b: Vec<i64> = (1..=r).map(|j| lam_c.part(j) - n as i64).collect();
    b.extend((1..=s).rev().map(|j| -mu_c.part(j)));
    let w = Weight::from_blocks(&a, &b);
    if !w.is_dominant() {
        return Err(Error::Violation(alloc::format!(
            "pi{:?} = {w} is not dominant",
            (lam, mu)
        )));
    }
    Ok(w)
}

/// A truncated lattice path along the boundary of a Young diagram, listed in
/// increasing order of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungLine {
    pub points: Vec<Point>,
}

/// `Y_λ` from `(bound, 0)` to `(0, bound)`; needs `bound ≥ max(λ₁, ℓ(λ))`.
pub fn young_line(lambda: &Partition, bound: i64) -> YoungLine {
    let mut p = alloc::vec![(bound, 0)];
    for i in 1..=bound {
        let x = lambda.part(i as usize);
        walk(&mut p, (x, i - 1));
        walk(&mut p, (x, i));
    }
    YoungLine { points: p }
}

/// `ϑ_{n,m}(x, y) = (m - x, n - y)`, re-sorted into increasing order.
pub fn theta_flip(n: usize, m: usize, line: &YoungLine) -> YoungLine {
    YoungLine {
        points: line
            .points
            .iter()
            .rev()
            .map(|&(x, y)| (m as i64 - x, n as i64 - y))
            .collect(),
    }
}

fn window(bp: &Bipartition, n: usize, m: usize) -> i64 {
    let l = &bp.lambda;
    let u = &bp.mu;
    [l.part(1), l.len() as i64, u.part(1), u.len() as i64]
        .into_iter()
        .max()
        .unwrap()
        + (n + m) as i64
        + 2
}

fn greater(p: Point, q: Point) -> bool {
    p.1 > q.1 || (p.1 == q.1 && p.0 < q.0)
}

/// `Y_λ` and `ϑ_{n,m}(Y_μ)` in a window large enough to hold all their common points.
pub fn cross_lines(bp: &Bipartition, n: usize, m: usize) -> (YoungLine, YoungLine) {
    let bound = window(bp, n, m);
    (
        young_line(&bp.lambda, bound),
        theta_flip(n, m, &young_line(&bp.mu, bound)),
    )
}

/// Common points of `Y_λ` and `ϑ_{n,m}(Y_μ)`, in increasing order.
pub fn intersection_points(bp: &Bipartition, n: usize, m: usize) -> Vec<Point> {
    let (y, z) = cross_lines(bp, n, m);
    y.points
        .iter()
        .copied()
        .filter(|p| z.points.contains(p))
        .collect()
}

pub fn in_cross_geometric(bp: &Bipartition, n: usize, m: usize) -> bool {
    !intersection_points(bp, n, m).is_empty()
}

fn splice(first: &[Point], second: &[Point], at: Point) -> Vec<Point> {
    let i = first
        .iter()
        .position(|&p| p == at)
        .expect("split point on first line");
    let j = second
        .iter()
        .position(|&p| p == at)
        .expect("split point on second line");
    let mut out = first[..=i].to_vec();
    out.extend_from_slice(&second[j + 1..]);
    out
}

/// The maximal common point of `Y_λ` and `ϑ_{n,m}(Y_μ)`.
pub fn maximal_intersection(bp: &Bipartition, n: usize, m: usize) -> Result<Point> {
    intersection_points(bp, n, m)
        .into_iter()
        .reduce(|a, b| if greater(b, a) { b } else { a })
        .ok_or_else(|| not_in_cross(n, m))
}

/// The geometric map `σ`: swap the halves of the two lines at their maximal common point.
pub fn sigma_map(bp: &Bipartition, n: usize, m: usize) -> Result<Weight> {
    let (y, z) = cross_lines(bp, n, m);
    let top = maximal_intersection(bp, n, m)?;
    let ga = splice(&y.points, &z.points, top);
    let gb = splice(&z.points, &y.points, top);
    let w = decode(n, m, &ga, &gb)?;
    if !w.is_dominant() {
        return Err(Error::Violation(alloc::format!(
            "sigma gives non-dominant {w}"
        )));
    }
    Ok(w)
}

/// Reads a partition off a line from `(·, 0)` to `(0, ·)` lying in the closed first quadrant.
fn read_partition(path: &[Point]) -> Option<Partition> {
    if path.iter().any(|&(x, y)| x < 0 || y < 0) || path.first()?.1 != 0 || path.last()?.0 != 0 {
        return None;
    }
    let parts = path
        .windows(2)
        .filter(|w| w[1].1 == w[0].1 + 1)
        .map(|w| w[0].0)
        .collect();
    Partition::new(parts).ok()
}

/// `π⁻¹(χ)`, found by splitting the lines of `χ` at one of their common points.
pub fn pi_inverse(chi: &Weight) -> Result<Bipartition> {
    let (n, m) = chi.dims();
    let (ga, gb) = gamma_paths(chi)?;
    let mut common: Vec<Point> = ga.iter().copied().filter(|p| gb.contains(p)).collect();
    common.sort_by_key(|&(x, y)| (core::cmp::Reverse(y), x));
    for top in common {
        let y = splice(&ga, &gb, top);
        let z = splice(&gb, &ga, top);
        let z_back: Vec<Point> = z
            .iter()
            .rev()
            .map(|&(x, yy)| (m as i64 - x, n as i64 - yy))
            .collect();
        let (Some(lambda), Some(mu)) = (read_partition(&y), read_partition(&z_back)) else {
            continue;
        };
        let bp = Bipartition { lambda, mu };
        if in_cross(&bp, n, m) && pi_map(&bp, n, m)? == *chi {
            return Ok(bp);
        }
    }
    Err(Error::Violation(alloc::format!(
        "no bipartition maps to {chi}"
    )))
}

/// All bipartitions in `Cr(n, m)` with `|λ|, |μ| ≤ max_size`.
pub fn cross_box(n: usize, m: usize, max_size: i64) -> Vec<Bipartition> {
    let parts = Partition::all_up_to(max_size);
    let mut out = Vec::new();
    for l in &parts {
        for u in &parts {
            let bp = Bipartition {
                lambda: l.clone(),
                mu: u.clone(),
            };
            if in_cross(&bp, n, m) {
                out.push(bp);
            }
        }
    }
    out
}

impl core::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {})", self.lambda, self.mu)
    }
}

/// Parses `"(3,1);(2)"`-style text: two partitions separated by `;`.
pub fn parse_bipartition(s: &str) -> Result<Bipartition> {
    let (l, u) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(String::from("expected `lambda;mu`")))?;
    Ok(Bipartition {
        lambda: l.parse()?,
        mu: u.parse()?,
    })
}
