//! Polygonal lines of dominant weights and the equivalence classes they describe.
//!
//! A point is `(x, y)`; a unit square is named by its lower-left corner. Both
//! lines `Γ_a` and `Γ̂_b` are lattice paths made of unit north and west steps
//! when read in the total order "larger `y` first, then smaller `x`".

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::kfield::RatK;
use crate::rootsys::{affine_reflect, l_value, odd_positive_roots, FormVector, Root, Weight};

pub type Point = (i64, i64);
pub type Square = (i64, i64);

/// The finite vertices of `Γ_a` (`M_1..M_{2n}`) or `Γ̂_b` (`N_1..N_{2m}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLine {
    pub vertices: Vec<Point>,
}

/// `(Γ_a, Γ̂_b)` for a dominant weight.
pub fn gamma_lines(chi: &Weight) -> Result<(PolyLine, PolyLine)> {
    require_dominant(chi)?;
    let n = chi.n() as i64;
    let mut ga = Vec::new();
    for (i, &a) in chi.a().iter().enumerate() {
        ga.push((a, i as i64));
        ga.push((a, i as i64 + 1));
    }
    let mut gb = Vec::new();
    for (j, &b) in chi.b().iter().enumerate() {
        gb.push((j as i64, n + b));
        gb.push((j as i64 + 1, n + b));
    }
    Ok((PolyLine { vertices: ga }, PolyLine { vertices: gb }))
}

fn require_dominant(chi: &Weight) -> Result<()> {
    if chi.is_dominant() {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("{chi} is not dominant")))
    }
}

/// `c_k(□) = x + k y` for the lower-left corner `(x, y)`.
pub fn c_weight(sq: Square) -> RatK {
    &RatK::from_int(sq.0) + &RatK::k().scale_int(sq.1)
}

/// `(D⁺_χ, D⁻_χ)`.
pub fn regions(chi: &Weight) -> Result<(BTreeSet<Square>, BTreeSet<Square>)> {
    require_dominant(chi)?;
    let n = chi.n() as i64;
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    for (i, &a) in chi.a().iter().enumerate() {
        let y = i as i64;
        plus.extend((0..a).map(|x| (x, y)));
        minus.extend((a..0).map(|x| (x, y)));
    }
    for (j, &b) in chi.b().iter().enumerate() {
        let x = j as i64;
        plus.extend((0..b).map(|y| (x, n + y)));
        minus.extend((b..0).map(|y| (x, n + y)));
    }
    Ok((plus, minus))
}

/// `b_r(χ) = r [Σ_{D⁺∖D⁻} c^{r-1} - Σ_{D⁻∖D⁺} c^{r-1}]`.
pub fn b_gen_geo(r: usize, chi: &Weight) -> Result<RatK> {
    let (plus, minus) = regions(chi)?;
    let e = r as i32 - 1;
    let mut acc = RatK::zero();
    for sq in plus.difference(&minus) {
        acc = &acc + &c_weight(*sq).pow(e)?;
    }
    for sq in minus.difference(&plus) {
        acc = &acc - &c_weight(*sq).pow(e)?;
    }
    Ok(acc.scale_int(r as i64))
}

/// Unit edge: horizontal `(x,y)-(x+1,y)` or vertical `(x,y)-(x,y+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    H(i64, i64),
    V(i64, i64),
}

/// Canonical encoding of the set `Γ_a ∪ Γ̂_b`.
///
/// Rays are extended over every adjacent edge of the union, and edges covered
/// by a ray are dropped, so equal unions give equal keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineKey {
    /// Ray along `y = 0` towards `+∞`, starting at this `x` (absent when `n = 0`).
    pub east: Option<i64>,
    /// Ray along `y = n` towards `-∞`, ending at this `x` (absent when `n = 0`).
    pub west: Option<i64>,
    /// Ray along `x = 0` towards `+∞`, starting at this `y` (absent when `m = 0`).
    pub north: Option<i64>,
    /// Ray along `x = m` towards `-∞`, ending at this `y` (absent when `m = 0`).
    pub south: Option<i64>,
    /// Full horizontal line `y = 0` when `n = 0`.
    pub full_horizontal: bool,
    /// Full vertical line `x = 0` when `m = 0`.
    pub full_vertical: bool,
    pub edges: BTreeSet<Edge>,
}

pub fn union_line_key(chi: &Weight) -> Result<LineKey> {
    require_dominant(chi)?;
    let (n, m) = (chi.n() as i64, chi.m() as i64);
    let (a, b) = (chi.a(), chi.b());
    let mut edges = BTreeSet::new();
    for i in 0..a.len() {
        edges.insert(Edge::V(a[i], i as i64));
        if i + 1 < a.len() {
            edges.extend((a[i + 1]..a[i]).map(|x| Edge::H(x, i as i64 + 1)));
        }
    }
    for j in 0..b.len() {
        edges.insert(Edge::H(j as i64, n + b[j]));
        if j + 1 < b.len() {
            edges.extend((n + b[j + 1]..n + b[j]).map(|y| Edge::V(j as i64 + 1, y)));
        }
    }
    let mut key = LineKey {
        east: None,
        west: None,
        north: None,
        south: None,
        full_horizontal: n == 0,
        full_vertical: m == 0,
        edges: BTreeSet::new(),
    };
    if n > 0 {
        let mut x = a[0];
        while edges.remove(&Edge::H(x - 1, 0)) {
            x -= 1;
        }
        edges.retain(|e| !matches!(*e, Edge::H(ex, 0) if ex >= x));
        key.east = Some(x);
        let mut x = a[a.len() - 1];
        while edges.remove(&Edge::H(x, n)) {
            x += 1;
        }
        edges.retain(|e| !matches!(*e, Edge::H(ex, ey) if ey == n && ex < x));
        key.west = Some(x);
    } else {
        edges.retain(|e| !matches!(e, Edge::H(_, 0)));
    }
    if m > 0 {
        let mut y = n + b[0];
        while edges.remove(&Edge::V(0, y - 1)) {
            y -= 1;
        }
        edges.retain(|e| !matches!(*e, Edge::V(0, ey) if ey >= y));
        key.north = Some(y);
        let mut y = n + b[b.len() - 1];
        while edges.remove(&Edge::V(m, y)) {
            y += 1;
        }
        edges.retain(|e| !matches!(*e, Edge::V(ex, ey) if ex == m && ey < y));
        key.south = Some(y);
    } else {
        edges.retain(|e| !matches!(e, Edge::V(0, _)));
    }
    key.edges = edges;
    Ok(key)
}

/// `η(ε_i - ε_{n+j})` is the square with upper-right corner `(j, i)` (1-based).
pub fn eta(n: usize, alpha: &Root) -> Result<Square> {
    if !(alpha.i < n && alpha.j >= n) {
        return Err(Error::Domain(alloc::format!(
            "{alpha} is not an odd positive root"
        )));
    }
    Ok(((alpha.j - n) as i64, alpha.i as i64))
}

pub fn eta_inv(n: usize, m: usize, sq: Square) -> Result<Root> {
    let (x, y) = sq;
    if x < 0 || y < 0 || x >= m as i64 || y >= n as i64 {
        return Err(Error::Domain(alloc::format!(
            "square {sq:?} lies outside [0,{m}]x[0,{n}]"
        )));
    }
    Ok(Root {
        i: y as usize,
        j: n + x as usize,
    })
}

/// Bounding window with a margin of one around every finite vertex.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    pub(crate) x0: i64,
    pub(crate) x1: i64,
    pub(crate) y0: i64,
    pub(crate) y1: i64,
}

impl Frame {
    pub(crate) fn of(chi: &Weight) -> Frame {
        let (n, m) = (chi.n() as i64, chi.m() as i64);
        let a_hi = chi.a().first().copied().unwrap_or(0);
        let a_lo = chi.a().last().copied().unwrap_or(0);
        let b_hi = chi.b().first().copied().unwrap_or(0);
        let b_lo = chi.b().last().copied().unwrap_or(0);
        Frame {
            x0: a_lo.min(0) - 1,
            x1: a_hi.max(m) + 1,
            y0: (n + b_lo).min(0) - 1,
            y1: (n + b_hi).max(n) + 1,
        }
    }
}

pub(crate) fn walk(path: &mut Vec<Point>, to: Point) {
    let mut cur = *path.last().unwrap();
    debug_assert!(
        to.0 <= cur.0 && to.1 >= cur.1,
        "lines only move west or north"
    );
    while cur.0 > to.0 {
        cur.0 -= 1;
        path.push(cur);
    }
    while cur.1 < to.1 {
        cur.1 += 1;
        path.push(cur);
    }
}

pub(crate) fn gamma_path(chi: &Weight, f: Frame) -> Vec<Point> {
    let mut p = vec![(f.x1, 0)];
    for (i, &a) in chi.a().iter().enumerate() {
        walk(&mut p, (a, i as i64));
        walk(&mut p, (a, i as i64 + 1));
    }
    walk(&mut p, (f.x0, chi.n() as i64));
    p
}

pub(crate) fn gamma_hat_path(chi: &Weight, f: Frame) -> Vec<Point> {
    let n = chi.n() as i64;
    let m = chi.m();
    let mut p = vec![(m as i64, f.y0)];
    for j in (0..m).rev() {
        let h = n + chi.b()[j];
        walk(&mut p, (j as i64 + 1, h));
        walk(&mut p, (j as i64, h));
    }
    walk(&mut p, (0, f.y1));
    p
}

/// `Γ_a` and `Γ̂_b` as increasing lattice paths, truncated one unit beyond every vertex.
pub fn gamma_paths(chi: &Weight) -> Result<(Vec<Point>, Vec<Point>)> {
    require_dominant(chi)?;
    let f = Frame::of(chi);
    Ok((gamma_path(chi, f), gamma_hat_path(chi, f)))
}

pub(crate) fn decode(n: usize, m: usize, a_path: &[Point], b_path: &[Point]) -> Result<Weight> {
    let mut a = vec![None; n];
    for w in a_path.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q.1 == p.1 + 1 {
            if p.1 < 0 || p.1 >= n as i64 || a[p.1 as usize].is_some() {
                return Err(Error::Violation(String::from(
                    "line Γ_a has a misplaced vertical step",
                )));
            }
            a[p.1 as usize] = Some(p.0);
        }
    }
    let mut b = vec![None; m];
    for w in b_path.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q.0 == p.0 - 1 {
            if p.0 < 1 || p.0 > m as i64 || b[(p.0 - 1) as usize].is_some() {
                return Err(Error::Violation(String::from(
                    "line Γ̂_b has a misplaced horizontal step",
                )));
            }
            b[(p.0 - 1) as usize] = Some(p.1 - n as i64);
        }
    }
    let a: Option<Vec<i64>> = a.into_iter().collect();
    let b: Option<Vec<i64>> = b.into_iter().collect();
    match (a, b) {
        (Some(a), Some(b)) => Ok(Weight::from_blocks(&a, &b)),
        _ => Err(Error::Violation(String::from("decoded line misses a step"))),
    }
}

/// One region between two consecutive components of `Γ_a ∩ Γ̂_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    /// Upper end of the gap (`Q_t`).
    pub upper_end: Point,
    /// Lower end of the gap (`P_{t+1}`).
    pub lower_end: Point,
    /// Path from `P_{t+1}` to `Q_t` whose first step goes west.
    pub lower: Vec<Point>,
    /// Path from `P_{t+1}` to `Q_t` whose first step goes north.
    pub upper: Vec<Point>,
    /// Squares enclosed by the two paths (`ν_t`).
    pub nu: Vec<Square>,
    /// `η⁻¹(ν_t)`.
    pub roots: Vec<Root>,
    /// `β_t = Σ_{α ∈ η⁻¹(ν_t)} α`.
    pub beta: Vec<i64>,
    /// Row lengths `d_i` of `ν_t`, keyed by 1-based `i`.
    pub row_lengths: BTreeMap<usize, i64>,
    /// Column lengths `d̃_j` of `ν_t`, keyed by 1-based `j`.
    pub col_lengths: BTreeMap<usize, i64>,
}

/// The equivalence class of a dominant weight, described through its lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqClassReport {
    pub input: Weight,
    /// All members, sorted.
    pub class: Vec<Weight>,
    /// Members with their choices `ϑ_t` (1 when `Γ_a` takes the upper path of gap `t`).
    pub members: Vec<(Weight, Vec<u8>)>,
    pub chi_min: Weight,
    pub r: usize,
    /// Components of `Γ_a ∩ Γ̂_b` as `(P_t, Q_t)`, in decreasing order.
    pub components: Vec<(Point, Point)>,
    /// Gaps in decreasing order; gap `t` joins `Q_t` to `P_{t+1}`.
    pub gaps: Vec<Gap>,
}

pub fn eq_class(chi: &Weight) -> Result<EqClassReport> {
    require_dominant(chi)?;
    let (n, m) = chi.dims();
    let frame = Frame::of(chi);
    let pa = gamma_path(chi, frame);
    let pb = gamma_hat_path(chi, frame);
    let index_b: BTreeMap<Point, usize> = pb.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let common: Vec<(usize, usize)> = pa
        .iter()
        .enumerate()
        .filter_map(|(i, p)| index_b.get(p).map(|&j| (i, j)))
        .collect();
    if common.is_empty() {
        return Err(Error::Violation(String::from("lines do not meet")));
    }
    if common.windows(2).any(|w| w[1].1 <= w[0].1) {
        return Err(Error::Violation(String::from("common points out of order")));
    }
    // ascending runs of adjacent common points: (start, end) index pairs in both paths
    let mut comps: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for &(ia, ib) in &common {
        match comps.last_mut() {
            Some((_, end)) if end.0 + 1 == ia && end.1 + 1 == ib => *end = (ia, ib),
            _ => comps.push(((ia, ib), (ia, ib))),
        }
    }
    let r = comps.len() - 1;
    struct RawGap {
        a_seg: Vec<Point>,
        b_seg: Vec<Point>,
        a_is_lower: bool,
    }
    let mut raw = Vec::with_capacity(r);
    for g in 0..r {
        let (ea, eb) = comps[g].1;
        let (sa, sb) = comps[g + 1].0;
        let a_seg = pa[ea..=sa].to_vec();
        let b_seg = pb[eb..=sb].to_vec();
        let a_is_lower = a_seg[1].0 < a_seg[0].0;
        let b_is_lower = b_seg[1].0 < b_seg[0].0;
        if a_is_lower == b_is_lower {
            return Err(Error::Violation(String::from(
                "both lines leave a common point in the same direction",
            )));
        }
        raw.push(RawGap {
            a_seg,
            b_seg,
            a_is_lower,
        });
    }
    // assemble the member for a choice of paths (true = Γ_a takes the lower path)
    let assemble = |a_lower: &[bool]| -> Result<Weight> {
        let mut na: Vec<Point> = pa[..comps[0].0 .0].to_vec();
        let mut nb: Vec<Point> = pb[..comps[0].0 .1].to_vec();
        for (c, comp) in comps.iter().enumerate() {
            na.extend_from_slice(&pa[comp.0 .0..=comp.1 .0]);
            nb.extend_from_slice(&pb[comp.0 .1..=comp.1 .1]);
            if c < r {
                let g = &raw[c];
                let (lower, upper) = if g.a_is_lower {
                    (&g.a_seg, &g.b_seg)
                } else {
                    (&g.b_seg, &g.a_seg)
                };
                let (for_a, for_b) = if a_lower[c] {
                    (lower, upper)
                } else {
                    (upper, lower)
                };
                na.extend_from_slice(&for_a[1..for_a.len() - 1]);
                nb.extend_from_slice(&for_b[1..for_b.len() - 1]);
            }
        }
        na.extend_from_slice(&pa[comps[r].1 .0 + 1..]);
        nb.extend_from_slice(&pb[comps[r].1 .1 + 1..]);
        let w = decode(n, m, &na, &nb)?;
        if !w.is_dominant() || gamma_path(&w, frame) != na || gamma_hat_path(&w, frame) != nb {
            return Err(Error::Violation(alloc::format!(
                "decoded weight {w} does not re-encode to its lines"
            )));
        }
        Ok(w)
    };
    if r >= 63 {
        return Err(Error::Resource(String::from(
            "class too large to enumerate",
        )));
    }
    // gaps are reported in decreasing order, so gap t is raw[r-1-t]
    let mut members = Vec::with_capacity(1 << r);
    for mask in 0u64..(1u64 << r) {
        let theta: Vec<u8> = (0..r).map(|t| ((mask >> t) & 1) as u8).collect();
        let a_lower: Vec<bool> = (0..r).map(|g| theta[r - 1 - g] == 0).collect();
        members.push((assemble(&a_lower)?, theta));
    }
    let chi_min = members[0].0.clone();
    let mut class: Vec<Weight> = members.iter().map(|(w, _)| w.clone()).collect();
    class.sort();
    let mut gaps = Vec::with_capacity(r);
    for g in raw.iter().rev() {
        let (lower, upper) = if g.a_is_lower {
            (&g.a_seg, &g.b_seg)
        } else {
            (&g.b_seg, &g.a_seg)
        };
        gaps.push(build_gap(n, m, lower.clone(), upper.clone())?);
    }
    let components = comps
        .iter()
        .rev()
        .map(|(s, e)| (pa[e.0], pa[s.0]))
        .collect();
    Ok(EqClassReport {
        input: chi.clone(),
        class,
        members,
        chi_min,
        r,
        components,
        gaps,
    })
}

fn up_steps(path: &[Point]) -> BTreeMap<i64, i64> {
    path.windows(2)
        .filter(|w| w[1].1 == w[0].1 + 1)
        .map(|w| (w[0].1, w[0].0))
        .collect()
}

fn build_gap(n: usize, m: usize, lower: Vec<Point>, upper: Vec<Point>) -> Result<Gap> {
    let lu = up_steps(&lower);
    let uu = up_steps(&upper);
    let mut nu = Vec::new();
    for (y, &xl) in &lu {
        let xu = *uu
            .get(y)
            .ok_or_else(|| Error::Violation(String::from("paths of a gap climb different rows")))?;
        if xl >= xu {
            return Err(Error::Violation(String::from(
                "lower path is not left of the upper path",
            )));
        }
        nu.extend((xl..xu).map(|x| (x, *y)));
    }
    nu.sort();
    let roots: Vec<Root> = nu
        .iter()
        .map(|&sq| eta_inv(n, m, sq))
        .collect::<Result<_>>()?;
    let mut beta = vec![0; n + m];
    let mut row_lengths = BTreeMap::new();
    let mut col_lengths = BTreeMap::new();
    for a in &roots {
        beta[a.i] += 1;
        beta[a.j] -= 1;
        *row_lengths.entry(a.i + 1).or_insert(0) += 1;
        *col_lengths.entry(a.j - n + 1).or_insert(0) += 1;
    }
    Ok(Gap {
        upper_end: *lower.last().unwrap(),
        lower_end: lower[0],
        lower,
        upper,
        nu,
        roots,
        beta,
        row_lengths,
        col_lengths,
    })
}

/// Root-theoretic description of a class from its minimal weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    /// `R(χ)`: roots reachable through chains of singular steps.
    pub roots: BTreeSet<Root>,
    /// Orthogonal components of `R(χ)`, each listed in a valid chain order.
    pub components: Vec<Vec<Root>>,
    /// `β_t` for each component.
    pub betas: Vec<Vec<i64>>,
}

fn chain_ok(base: &Weight, alpha: &Root) -> bool {
    l_value(base, alpha, 1).is_zero()
}

/// `R(χ)`, its orthogonal components and the vectors `β_t`.
pub fn r_chi(chi_min: &Weight) -> Result<RootData> {
    let report = eq_class(chi_min)?;
    if &report.chi_min != chi_min {
        return Err(Error::Domain(alloc::format!(
            "{chi_min} is not the minimal weight of its class"
        )));
    }
    let (n, m) = chi_min.dims();
    let len = n + m;
    let odd = odd_positive_roots(n, m);
    // search over sets of distinct roots already added
    let mut seen: BTreeSet<Vec<Root>> = BTreeSet::new();
    let mut frontier: Vec<Vec<Root>> = vec![Vec::new()];
    let mut reached: BTreeSet<Root> = BTreeSet::new();
    seen.insert(Vec::new());
    while let Some(used) = frontier.pop() {
        if seen.len() > 1 << 16 {
            return Err(Error::Resource(String::from("root chain search too large")));
        }
        let mut base = chi_min.clone();
        for a in &used {
            base = base.add(&a.int_vector(len));
        }
        for a in &odd {
            if used.contains(a) || !chain_ok(&base, a) {
                continue;
            }
            reached.insert(*a);
            let mut next = used.clone();
            next.push(*a);
            next.sort();
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    // orthogonal components: (α, β) = δ_ii' + k δ_jj' vanishes iff no shared index
    let list: Vec<Root> = reached.iter().copied().collect();
    let mut comp_of: Vec<usize> = (0..list.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for s in 0..list.len() {
        for t in s + 1..list.len() {
            if list[s].i == list[t].i || list[s].j == list[t].j {
                let (a, b) = (find(&mut comp_of, s), find(&mut comp_of, t));
                comp_of[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Root>> = BTreeMap::new();
    for (s, root) in list.iter().enumerate() {
        let c = find(&mut comp_of, s);
        groups.entry(c).or_default().push(*root);
    }
    let mut components = Vec::new();
    let mut betas = Vec::new();
    for (_, group) in groups {
        let order = chain_order(chi_min, &group).ok_or_else(|| {
            Error::Violation(alloc::format!("no chain order for component {group:?}"))
        })?;
        let mut beta = vec![0; len];
        for a in &order {
            beta[a.i] += 1;
            beta[a.j] -= 1;
        }
        components.push(order);
        betas.push(beta);
    }
    Ok(RootData {
        roots: reached,
        components,
        betas,
    })
}

/// An ordering of `roots` in which each root is singular for the running sum.
pub fn chain_order(chi: &Weight, roots: &[Root]) -> Option<Vec<Root>> {
    fn dfs(base: &Weight, rest: &mut Vec<Root>, order: &mut Vec<Root>) -> bool {
        if rest.is_empty() {
            return true;
        }
        for idx in 0..rest.len() {
            let a = rest[idx];
            if chain_ok(base, &a) {
                rest.remove(idx);
                order.push(a);
                let next = base.add(&a.int_vector(base.coords().len()));
                if dfs(&next, rest, order) {
                    return true;
                }
                order.pop();
                rest.insert(idx, a);
            }
        }
        false
    }
    let mut rest = roots.to_vec();
    let mut order = Vec::new();
    dfs(chi, &mut rest, &mut order).then_some(order)
}

/// `g = s_{α_N} ∘ ... ∘ s_{α_1}` (affine action) applied to `v`.
pub fn apply_chain(n: usize, order: &[Root], v: &[RatK]) -> FormVector {
    order
        .iter()
        .fold(v.to_vec(), |acc, a| affine_reflect(n, a, &acc))
}

/// `Π_{α ∈ R₁⁺} [(χ+ρ,α) - ½(α,α)] ≠ 0`.
pub fn product_criterion(chi: &Weight) -> bool {
    let (n, m) = chi.dims();
    odd_positive_roots(n, m)
        .iter()
        .all(|a| !l_value(chi, a, -1).is_zero())
}

/// Named pass/fail checks of the class structure.
pub fn verify_class(report: &EqClassReport) -> Result<Vec<(String, bool)>> {
    let chi = &report.chi_min;
    let (n, m) = chi.dims();
    let len = n + m;
    let mut out = Vec::new();
    let sing = crate::rootsys::singular_minus(chi);
    out.push((
        String::from("class size is 2^|singular_minus(chi_min)|"),
        report.class.len() == 1 << sing.len() && report.r == sing.len(),
    ));
    let data = r_chi(chi)?;
    let nu: BTreeSet<Square> = report
        .gaps
        .iter()
        .flat_map(|g| g.nu.iter().copied())
        .collect();
    let eta_r: BTreeSet<Square> = data
        .roots
        .iter()
        .map(|a| eta(n, a))
        .collect::<Result<_>>()?;
    out.push((String::from("eta(R(chi)) = nu"), eta_r == nu));
    let comp_sets: BTreeSet<BTreeSet<Square>> = data
        .components
        .iter()
        .map(|c| c.iter().map(|a| eta(n, a)).collect::<Result<BTreeSet<_>>>())
        .collect::<Result<_>>()?;
    let nu_sets: BTreeSet<BTreeSet<Square>> = connected_components(&nu);
    let gap_sets: BTreeSet<BTreeSet<Square>> = report
        .gaps
        .iter()
        .map(|g| g.nu.iter().copied().collect())
        .collect();
    out.push((
        String::from("orthogonal components match connected components of nu"),
        data.components.len() == report.r && comp_sets == nu_sets && nu_sets == gap_sets,
    ));
    let mut generated: Vec<Weight> = Vec::new();
    for mask in 0u64..(1u64 << data.betas.len()) {
        let mut w = chi.clone();
        for (t, b) in data.betas.iter().enumerate() {
            if mask >> t & 1 == 1 {
                w = w.add(b);
            }
        }
        generated.push(w);
    }
    generated.sort();
    out.push((
        String::from("class = chi_min + sum of theta_t beta_t"),
        generated == report.class,
    ));
    let passing: Vec<&Weight> = report
        .class
        .iter()
        .filter(|w| product_criterion(w))
        .collect();
    out.push((
        String::from("only chi_min passes the product criterion"),
        passing == vec![chi],
    ));
    let start = chi.to_form_vector();
    let realize = data
        .components
        .iter()
        .zip(&data.betas)
        .all(|(order, beta)| apply_chain(n, order, &start) == chi.add(beta).to_form_vector());
    out.push((
        String::from("g_t maps chi_min to chi_min + beta_t"),
        realize,
    ));
    // affine maps agree everywhere iff they agree on an affine basis
    let mut probes: Vec<FormVector> = vec![vec![RatK::zero(); len]];
    for i in 0..len {
        let mut e = vec![RatK::zero(); len];
        e[i] = RatK::one();
        probes.push(e);
    }
    probes.extend(report.class.iter().map(Weight::to_form_vector));
    let mut commute = true;
    for s in 0..data.components.len() {
        for t in s + 1..data.components.len() {
            let (gs, gt) = (&data.components[s], &data.components[t]);
            commute &= probes.iter().all(|p| {
                apply_chain(n, gs, &apply_chain(n, gt, p))
                    == apply_chain(n, gt, &apply_chain(n, gs, p))
            });
        }
    }
    out.push((String::from("g_t pairwise commute"), commute));
    let rows_ok = report.gaps.iter().all(|g| {
        let mut beta = vec![0; len];
        for (&i, &d) in &g.row_lengths {
            beta[i - 1] += d;
        }
        for (&j, &d) in &g.col_lengths {
            beta[n + j - 1] -= d;
        }
        beta == g.beta
    });
    out.push((
        String::from("beta_t from row and column lengths of nu_t"),
        rows_ok,
    ));
    Ok(out)
}

/// Edge-connected components of a set of squares.
pub fn connected_components(squares: &BTreeSet<Square>) -> BTreeSet<BTreeSet<Square>> {
    let mut left = squares.clone();
    let mut out = BTreeSet::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some((x, y)) = stack.pop() {
            comp.insert((x, y));
            for nb in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                if left.remove(&nb) {
                    stack.push(nb);
                }
            }
        }
        out.insert(comp);
    }
    out
}

/// ASCII picture of `Γ_a ∪ Γ̂_b` with the squares of `ν` shaded.
pub struct Picture<'a>(pub &'a EqClassReport);

impl fmt::Display for Picture<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chi = &self.0.input;
        let frame = Frame::of(chi);
        let pa = gamma_path(chi, frame);
        let pb = gamma_hat_path(chi, frame);
        let mut edges = BTreeSet::new();
        for path in [&pa, &pb] {
            for w in path.windows(2) {
                let (p, q) = (w[0], w[1]);
                edges.insert(if p.1 == q.1 {
                    Edge::H(q.0, q.1)
                } else {
                    Edge::V(p.0, p.1)
                });
            }
        }
        let nu: BTreeSet<Square> = self
            .0
            .gaps
            .iter()
            .flat_map(|g| g.nu.iter().copied())
            .collect();
        for y in (frame.y0..=frame.y1).rev() {
            let mut line = String::new();
            for x in frame.x0..=frame.x1 {
                let on = edges.iter().any(|e| match *e {
                    Edge::H(ex, ey) => ey == y && (ex == x || ex + 1 == x),
                    Edge::V(ex, ey) => ex == x && (ey == y || ey + 1 == y),
                });
                line.push(if on { '+' } else { '.' });
                if x < frame.x1 {
                    line.push(if edges.contains(&Edge::H(x, y)) {
                        '-'
                    } else {
                        ' '
                    });
                }
            }
            writeln!(f, "{}", line.trim_end())?;
            if y > frame.y0 {
                let mut line = String::new();
                for x in frame.x0..=frame.x1 {
                    line.push(if edges.contains(&Edge::V(x, y - 1)) {
                        '|'
                    } else {
                        ' '
                    });
                    if x < frame.x1 {
                        line.push(if nu.contains(&(x, y - 1)) { '#' } else { ' ' });
                    }
                }
                writeln!(f, "{}", line.trim_end())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn line_vertices() {
        let (ga, _) = gamma_lines(&w("(0|0)")).unwrap();
        assert_eq!(ga.vertices, vec![(0, 0), (0, 1)]);
        let (_, gb) = gamma_lines(&w("(0|0)")).unwrap();
        assert_eq!(gb.vertices, vec![(0, 1), (1, 1)]);
        let (ga, gb) = gamma_lines(&w("(1|-1)")).unwrap();
        assert_eq!(ga.vertices, vec![(1, 0), (1, 1)]);
        assert_eq!(gb.vertices, vec![(0, 0), (1, 0)]);
        assert!(gamma_lines(&w("(0,1|0)")).is_err());
    }

    #[test]
    fn region_examples() {
        let (p, m) = regions(&w("(0|0)")).unwrap();
        assert!(p.is_empty() && m.is_empty());
        let (p, m) = regions(&w("(2|0)")).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(0, 0), (1, 0)]);
        assert!(m.is_empty());
        let (_, m) = regions(&w("(0|-1)")).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn square_weights() {
        assert!(c_weight((0, 0)).is_zero());
        assert_eq!(c_weight((2, 1)), "2+k".parse().unwrap());
        // k^{r-1}(c_{1/k}(x,y) + n) = c_k(y, x + n)
        for (x, y, n, r) in [(0i64, 0i64, 1i64, 1i32), (2, 1, 2, 3), (1, -2, 3, 4)] {
            let lhs = &RatK::k_pow(r - 1)
                * &(&(&RatK::from_int(x) + &RatK::k_pow(-1).scale_int(y)) + &RatK::from_int(n))
                    .pow(r - 1)
                    .unwrap();
            let rhs = c_weight((y, x + n)).pow(r - 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn geometric_b_examples() {
        for r in 1..5 {
            assert!(b_gen_geo(r, &w("(0|0)")).unwrap().is_zero());
            assert!(b_gen_geo(r, &w("(1|-1)")).unwrap().is_zero());
        }
        let chi = w("(3,1|0,-2)");
        assert_eq!(b_gen_geo(1, &chi).unwrap(), RatK::from_int(2));
    }

    #[test]
    fn key_examples() {
        assert_eq!(
            union_line_key(&w("(0|0)")).unwrap(),
            union_line_key(&w("(1|-1)")).unwrap()
        );
        assert_ne!(
            union_line_key(&w("(2|0)")).unwrap(),
            union_line_key(&w("(0|0)")).unwrap()
        );
        assert_eq!(
            union_line_key(&w("(2,1|0)")).unwrap(),
            union_line_key(&w("(2,1|0)")).unwrap()
        );
    }

    #[test]
    fn class_examples() {
        let rep = eq_class(&w("(0|0)")).unwrap();
        assert_eq!(rep.class, vec![w("(0|0)"), w("(1|-1)")]);
        assert_eq!(rep.r, 1);
        assert_eq!(rep.chi_min, w("(0|0)"));
        assert_eq!(rep.gaps[0].nu, vec![(0, 0)]);
        let rep = eq_class(&w("(1|-1)")).unwrap();
        assert_eq!(rep.chi_min, w("(0|0)"));
        let rep = eq_class(&w("(2|0)")).unwrap();
        assert_eq!(rep.class, vec![w("(2|0)")]);
        assert_eq!(rep.r, 0);
        let rep = eq_class(&w("(1,0|0)")).unwrap();
        assert_eq!(rep.class, vec![w("(1,0|0)"), w("(1,1|-1)")]);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(2, &Root { i: 0, j: 2 }).unwrap(), (0, 0));
        assert_eq!(eta(2, &Root { i: 1, j: 4 }).unwrap(), (2, 1));
        for a in odd_positive_roots(2, 3) {
            assert_eq!(eta_inv(2, 3, eta(2, &a).unwrap()).unwrap(), a);
        }
        assert!(eta_inv(2, 3, (3, 0)).is_err());
        assert!(eta(2, &Root { i: 0, j: 1 }).is_err());
    }

    #[test]
    fn root_data_simple() {
        let d = r_chi(&w("(0|0)")).unwrap();
        assert_eq!(
            d.roots.into_iter().collect::<Vec<_>>(),
            vec![Root { i: 0, j: 1 }]
        );
        assert_eq!(d.betas, vec![vec![1, -1]]);
        assert!(r_chi(&w("(2|0)")).unwrap().roots.is_empty());
        assert!(r_chi(&w("(1|-1)")).is_err());
    }

    #[test]
    fn class_structure_checks_pass() {
        for s in ["(0|0)", "(1,0|0,-1)", "(0,0|0,0)", "(2|0)", "(1,0|0)"] {
            let rep = eq_class(&w(s)).unwrap();
            for (name, ok) in verify_class(&rep).unwrap() {
                assert!(ok, "{s}: {name}");
            }
        }
    }

    #[test]
    fn picture_renders() {
        let rep = eq_class(&w("(0|0)")).unwrap();
        let pic = alloc::format!("{}", Picture(&rep));
        assert!(pic.contains('#'));
    }

    #[test]
    fn geometric_b_matches_bernoulli_sum() {
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            for chi in Weight::dominant_box(n, m, 2) {
                for r in 1..5 {
                    assert_eq!(
                        b_gen_geo(r, &chi).unwrap(),
                        crate::rootsys::b_gen_eval(r, &chi),
                        "{chi} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn keys_agree_with_classes() {
        for (n, m) in [(1, 1), (2, 1), (2, 2)] {
            let box_ = Weight::dominant_box(n, m, 2);
            for chi in &box_ {
                let rep = eq_class(chi).unwrap();
                assert!(rep.class.contains(chi));
                let key = union_line_key(chi).unwrap();
                for other in &box_ {
                    let same = union_line_key(other).unwrap() == key;
                    assert_eq!(same, rep.class.contains(other), "{chi} vs {other}");
                }
            }
        }
    }
}
