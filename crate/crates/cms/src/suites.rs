//! Verification sweeps over bounded boxes of weights, supports and bipartitions.

use std::collections::{BTreeMap, BTreeSet};

use cms_core::bipart::{
    cross_box, extremal_pair, maximal_intersection, pi_inverse, pi_map, sigma_map,
};
use cms_core::diagram::{b_gen_geo, eq_class, regions, union_line_key, verify_class};
use cms_core::laurent::{dominant_rep, hull_lattice_points, Exponent};
use cms_core::quasi::{commute_check, integrals_upto, is_quasi_invariant};
use cms_core::rootsys::{b_gen_eval, singular_minus, Weight};
use cms_core::spectral::{
    eigenfunction, gen_eigenspace_with, image_algebra, power_sum_generation_check,
    quasi_space_with, sampled_dimension, spectral_split, Limits, QuasiSpace,
};
use cms_core::{Error, RatK};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

type Cases = Vec<(String, bool)>;
type WeightResult = Result<Weight, Error>;

/// Outcome of one property over a sweep.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Verdict {
    pub property: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Verdict {
    fn from_cases(property: &str, cases: Vec<(String, bool)>) -> Verdict {
        let checked = cases.len();
        let counterexample = cases.into_iter().find(|(_, ok)| !ok).map(|(c, _)| c);
        Verdict {
            property: property.to_string(),
            passed: counterexample.is_none(),
            checked,
            counterexample,
        }
    }
}

/// A suite failed to finish; the verdicts gathered so far are kept.
#[derive(Debug)]
pub struct Interrupted {
    pub verdicts: Vec<Verdict>,
    pub error: Error,
}

pub type SuiteResult = Result<Vec<Verdict>, Interrupted>;

fn interrupted(verdicts: Vec<Verdict>, error: Error) -> Interrupted {
    Interrupted { verdicts, error }
}

/// Every permutation of the coordinates of `mu`, across both blocks.
pub fn full_orbit(mu: &[i64]) -> Vec<Exponent> {
    let mut out = BTreeSet::new();
    let mut v = mu.to_vec();
    permute(&mut v, 0, &mut out);
    out.into_iter().collect()
}

fn permute(v: &mut Vec<i64>, start: usize, out: &mut BTreeSet<Exponent>) {
    if start == v.len() {
        out.insert(v.clone());
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, out);
        v.swap(start, i);
    }
}

/// Lattice hulls of `S_{n+m}`-orbits of decreasing exponents with entries in
/// `[-bound, bound]`, keeping those of at most `max_size` points.
pub fn hull_supports(n: usize, m: usize, bound: i64, max_size: usize) -> Vec<BTreeSet<Exponent>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mu in decreasing(n + m, bound) {
        let hull = hull_lattice_points(&full_orbit(&mu));
        if hull.len() <= max_size && seen.insert(hull.clone()) {
            out.push(hull);
        }
    }
    out
}

fn decreasing(len: usize, bound: i64) -> Vec<Exponent> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in out {
            let top = v.last().copied().unwrap_or(bound);
            for x in (-bound..=top).rev() {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn show_support(s: &BTreeSet<Exponent>) -> String {
    let top = s
        .iter()
        .map(|e| dominant_rep(e, e.len()))
        .max()
        .unwrap_or_default();
    format!("support of {} points around {:?}", s.len(), top)
}

/// Commutation `[L_r, L_s] f = 0` and invariance of `W(T)` with support
/// inclusion, for every basis element `f` over hull supports.
pub fn commute_suite(
    n: usize,
    m: usize,
    bound: i64,
    rmax: usize,
    max_support: usize,
    limits: &Limits,
) -> SuiteResult {
    let supports = hull_supports(n, m, bound, max_support);
    let spaces: Vec<Result<QuasiSpace, Error>> = supports
        .par_iter()
        .map(|s| quasi_space_with(s, n, m, limits))
        .collect();
    let mut commute = Vec::new();
    let mut invariant = Vec::new();
    let mut spaces_ok = Vec::new();
    for s in spaces {
        match s {
            Ok(s) => spaces_ok.push(s),
            Err(e) => return Err(interrupted(Vec::new(), e)),
        }
    }
    let results: Vec<Result<(Cases, Cases), Error>> = spaces_ok
        .par_iter()
        .map(|space| {
            let mut c = Vec::new();
            let mut inv = Vec::new();
            let label = show_support(space.support());
            for (idx, f) in space.basis().iter().enumerate() {
                for r in 1..=rmax {
                    for s in r + 1..=rmax {
                        c.push((
                            format!("[L_{r}, L_{s}] on basis element {idx} of {label}"),
                            commute_check(r, s, f)?,
                        ));
                    }
                }
                for (r, g) in integrals_upto(rmax, f)?.iter().enumerate() {
                    let ok =
                        is_quasi_invariant(g) && g.support_within(f) && space.coords(g).is_ok();
                    inv.push((format!("L_{} on basis element {idx} of {label}", r + 1), ok));
                }
            }
            Ok((c, inv))
        })
        .collect();
    for r in results {
        match r {
            Ok((c, i)) => {
                commute.extend(c);
                invariant.extend(i);
            }
            Err(e) => return Err(interrupted(Vec::new(), e)),
        }
    }
    let spaces = Verdict {
        property: "quasi-invariant spaces over hull supports".into(),
        passed: !spaces_ok.is_empty(),
        checked: spaces_ok.len(),
        counterexample: None,
    };
    Ok(vec![
        spaces,
        Verdict::from_cases("commutation", commute),
        Verdict::from_cases("invariance and support", invariant),
    ])
}

/// Largest number of squares in the two regions of a weight of the box.
pub fn cell_bound(weights: &[Weight]) -> usize {
    weights
        .iter()
        .filter_map(|w| regions(w).ok())
        .map(|(a, b)| a.len() + b.len())
        .max()
        .unwrap_or(0)
}

/// Geometric and Bernoulli-sum values of `b_r`, the line criterion for
/// equivalence, and the structure of every class in the box.
pub fn bernoulli_suite(n: usize, m: usize, bound: i64, rmax: usize) -> SuiteResult {
    let weights = Weight::dominant_box(n, m, bound);
    let geo: Vec<(String, bool)> = weights
        .par_iter()
        .flat_map_iter(|w| {
            (1..=rmax).map(move |r| {
                let ok = b_gen_geo(r, w)
                    .map(|g| g == b_gen_eval(r, w))
                    .unwrap_or(false);
                (format!("b_{r}{w}"), ok)
            })
        })
        .collect();
    let mut verdicts = vec![Verdict::from_cases("geometric b_r formula", geo)];
    let r_max = 2 * cell_bound(&weights);
    match equivalence_check(&weights, r_max) {
        Ok(v) => verdicts.push(v),
        Err(e) => return Err(interrupted(verdicts, e)),
    }
    match class_check(&weights) {
        Ok(v) => verdicts.push(v),
        Err(e) => return Err(interrupted(verdicts, e)),
    }
    Ok(verdicts)
}

/// Equal line keys exactly when `b_1..b_rmax` agree, over all pairs of the box.
pub fn equivalence_check(weights: &[Weight], r_max: usize) -> Result<Verdict, Error> {
    let keys: Vec<_> = weights
        .par_iter()
        .map(union_line_key)
        .collect::<Result<_, _>>()?;
    let values: Vec<Vec<RatK>> = weights
        .par_iter()
        .map(|w| (1..=r_max).map(|r| b_gen_eval(r, w)).collect())
        .collect();
    let mut by_key: BTreeMap<_, usize> = BTreeMap::new();
    let mut by_value: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut key_class = Vec::new();
    let mut value_class = Vec::new();
    for (key, val) in keys.iter().zip(&values) {
        let next = by_key.len();
        key_class.push(*by_key.entry(key.clone()).or_insert(next));
        let next = by_value.len();
        value_class.push(
            *by_value
                .entry(val.iter().map(ToString::to_string).collect())
                .or_insert(next),
        );
    }
    let mut cases = Vec::new();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            let same_key = key_class[i] == key_class[j];
            let same_value = value_class[i] == value_class[j];
            if same_key || same_value {
                cases.push((
                    format!(
                        "{} ~ {} (keys {same_key}, b_r up to {r_max} {same_value})",
                        weights[i], weights[j]
                    ),
                    same_key == same_value,
                ));
            }
        }
    }
    // pairs with neither key nor values equal agree trivially
    let mut v = Verdict::from_cases(
        &format!("line criterion for equivalence, r <= {r_max}"),
        cases,
    );
    v.checked = weights.len() * weights.len().saturating_sub(1) / 2;
    Ok(v)
}

/// Structural checks on the class of every weight of the box.
pub fn class_check(weights: &[Weight]) -> Result<Verdict, Error> {
    let minima: BTreeSet<Weight> = weights
        .par_iter()
        .map(|w| eq_class(w).map(|c| c.chi_min))
        .collect::<Result<_, _>>()?;
    let cases: Vec<Vec<(String, bool)>> = minima
        .par_iter()
        .map(|w| {
            let report = eq_class(w)?;
            Ok(verify_class(&report)?
                .into_iter()
                .map(|(name, ok)| (format!("{name} for the class of {w}"), ok))
                .collect())
        })
        .collect::<Result<_, Error>>()?;
    Ok(Verdict::from_cases(
        "class structure",
        cases.into_iter().flatten().collect(),
    ))
}

/// `σ = π`, `π⁻¹ ∘ π = id`, and `π` onto the dominant box.
pub fn bijection_suite(n: usize, m: usize, max_size: i64, weight_bound: i64) -> SuiteResult {
    let bps = cross_box(n, m, max_size);
    let mapped: Vec<(String, WeightResult, WeightResult)> = bps
        .par_iter()
        .map(|x| (x.to_string(), pi_map(x, n, m), sigma_map(x, n, m)))
        .collect();
    let mut sigma = Vec::new();
    let mut inverse = Vec::new();
    let mut maximal = Vec::new();
    let mut image = BTreeSet::new();
    for ((label, pi, sg), x) in mapped.iter().zip(&bps) {
        let ok = matches!((pi, sg), (Ok(a), Ok(b)) if a == b);
        sigma.push((format!("sigma = pi at {label}"), ok));
        if let Ok(w) = pi {
            image.insert(w.clone());
            inverse.push((format!("pi^-1(pi{label})"), pi_inverse(w).as_ref() == Ok(x)));
        } else {
            inverse.push((format!("pi{label}"), false));
        }
        let expected = extremal_pair(x, n, m).map(|(p, s)| ((m - s) as i64, p as i64));
        maximal.push((
            format!("maximal intersection at {label}"),
            maximal_intersection(x, n, m).ok() == expected.ok(),
        ));
    }
    let injective = image.len() == bps.len();
    let mut onto = Vec::new();
    for w in Weight::dominant_box(n, m, weight_bound) {
        match pi_inverse(&w) {
            Ok(x) => {
                let small = x.lambda.size() <= max_size && x.mu.size() <= max_size;
                let ok = pi_map(&x, n, m).as_ref() == Ok(&w) && (!small || image.contains(&w));
                onto.push((format!("{w} from {x}"), ok));
            }
            Err(_) => onto.push((format!("{w} has no preimage"), false)),
        }
    }
    let mut onto = Verdict::from_cases("box weights are images", onto);
    if !injective {
        onto.passed = false;
        onto.counterexample = Some("pi is not injective".into());
    }
    Ok(vec![
        Verdict::from_cases("sigma equals pi", sigma),
        Verdict::from_cases("inverse", inverse),
        Verdict::from_cases("maximal intersection point", maximal),
        onto,
    ])
}

/// Spectral checks for one regular weight.
pub struct SpectralCase {
    pub weight: Weight,
    pub r: usize,
    pub dimension: usize,
    pub space_dimension: usize,
    pub dimension_ok: bool,
    pub direct_sum_ok: bool,
    pub algebra_ok: bool,
    pub eigenfunction_ok: bool,
    pub stable: bool,
}

/// Dimension, direct sum, image algebra and joint eigenfunction of one class.
pub fn spectral_case(chi: &Weight, limits: &Limits, split: bool) -> Result<SpectralCase, Error> {
    let e = gen_eigenspace_with(chi, limits)?;
    let r = singular_minus(chi).len();
    let dimension_ok = e.dim() == 1 << r && e.matrices_commute();
    let direct_sum_ok = if split {
        let (parts, total) = spectral_split(&e.space)?;
        parts.iter().map(|p| p.1).sum::<usize>() == total
    } else {
        true
    };
    let algebra_ok = image_algebra(&e)
        .map(|a| a.matches_dual_numbers())
        .unwrap_or(false);
    let eigenfunction_ok = match eigenfunction(&e) {
        Ok(j) => e.theta.iter().take(4).enumerate().all(|(s, t)| {
            cms_core::quasi::integral_apply(s + 1, &j)
                .map(|g| g == j.scale(t))
                .unwrap_or(false)
        }),
        Err(_) => false,
    };
    Ok(SpectralCase {
        weight: chi.clone(),
        r,
        dimension: e.dim(),
        space_dimension: e.space.dim(),
        dimension_ok,
        direct_sum_ok,
        algebra_ok,
        eigenfunction_ok,
        stable: e.stable,
    })
}

/// Windows for the power-sum check: lattice hulls of full orbits.
pub fn power_sum_windows(
    n: usize,
    m: usize,
    bound: i64,
    max_size: usize,
) -> Vec<BTreeSet<Exponent>> {
    hull_supports(n, m, bound, max_size)
}

/// Spectral checks for every regular weight of the box.
pub fn spectral_suite(
    n: usize,
    m: usize,
    bound: i64,
    limits: &Limits,
    k_sample: Option<&BigRational>,
) -> SuiteResult {
    let weights: Vec<Weight> = Weight::dominant_box(n, m, bound)
        .into_iter()
        .filter(Weight::is_regular)
        .collect();
    let cases: Vec<Result<SpectralCase, Error>> = weights
        .par_iter()
        .map(|w| spectral_case(w, limits, true))
        .collect();
    let mut dims = Vec::new();
    let mut sums = Vec::new();
    let mut alg = Vec::new();
    let mut eig = Vec::new();
    let mut sampled = Vec::new();
    for (w, c) in weights.iter().zip(cases) {
        let c = match c {
            Ok(c) => c,
            Err(e) => {
                let partial = vec![Verdict::from_cases("eigenspace dimension 2^r", dims)];
                return Err(interrupted(partial, e));
            }
        };
        dims.push((
            format!("{w}: dim {} with r = {}", c.dimension, c.r),
            c.dimension_ok && c.stable,
        ));
        sums.push((
            format!("{w}: split of W of dim {}", c.space_dimension),
            c.direct_sum_ok,
        ));
        alg.push((format!("{w}: image algebra"), c.algebra_ok));
        eig.push((format!("{w}: joint eigenfunction"), c.eigenfunction_ok));
        if let Some(k0) = k_sample {
            let d = sampled_dimension(w, k0).ok();
            sampled.push((
                format!("{w}: dimension at k = {k0}"),
                d == Some(c.dimension),
            ));
        }
    }
    let windows = power_sum_windows(n, m, bound, 60);
    let ps: Vec<(String, bool)> = windows
        .par_iter()
        .map(|w| {
            (
                show_support(w),
                power_sum_generation_check(w, n, m).unwrap_or(false),
            )
        })
        .collect();
    let mut out = vec![
        Verdict::from_cases("eigenspace dimension 2^r", dims),
        Verdict::from_cases("direct sum of eigenspaces", sums),
        Verdict::from_cases("image algebra of dual numbers", alg),
        Verdict::from_cases("unique joint eigenfunction", eig),
        Verdict::from_cases("power sums generate", ps),
    ];
    if k_sample.is_some() {
        out.push(Verdict::from_cases("sampled dimension agrees", sampled));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_and_hulls() {
        assert_eq!(full_orbit(&[1, -1]), vec![vec![-1, 1], vec![1, -1]]);
        let hulls = hull_supports(1, 1, 1, 60);
        assert!(hulls.contains(&[vec![-1, 1], vec![0, 0], vec![1, -1]].into_iter().collect()));
        assert_eq!(decreasing(2, 1).len(), 6);
    }

    #[test]
    fn small_suites_pass() {
        let limits = Limits::default();
        for v in commute_suite(1, 1, 1, 3, 60, &limits).unwrap() {
            assert!(v.passed, "{v:?}");
        }
        for v in bernoulli_suite(1, 1, 1, 4).unwrap() {
            assert!(v.passed, "{v:?}");
        }
        for v in bijection_suite(1, 1, 3, 1).unwrap() {
            assert!(v.passed, "{v:?}");
        }
    }
}
