//! The fixed set `Fix(g)` split by cycle partition and by symmetry/commutation type.
//!
//! Two independent routes: a brute filter over involutions commuting with `|g|`
//! and every coloring, and a constructive route that builds each block from
//! explicit per-part families. They must agree.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::partition::{partition_of, pi21, CyclePartition, Part};
use crate::cyclotomic::{sum_units, Cyclotomic, UnitScalar};
use crate::error::{Error, Result};
use crate::group::{gcd_u32, involutions};
use crate::model::phi;
use crate::perm::ColoredPermutation;

/// Default cap on `r^n · #involutions` work in the brute route.
pub const DEFAULT_FIX_BRUTE_BOUND: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FixKind {
    /// symmetric, commutes with `|g|`
    SPlus,
    /// symmetric, anticommutes with `|g|`
    SMinus,
    /// antisymmetric, commutes
    APlus,
    /// antisymmetric, anticommutes
    AMinus,
}

impl FixKind {
    pub const ALL: [FixKind; 4] = [FixKind::SPlus, FixKind::SMinus, FixKind::APlus, FixKind::AMinus];

    fn index(self) -> usize {
        self as usize
    }
}

/// `S⁺_π, S⁻_π, A⁺_π, A⁻_π` for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixBlock {
    pub partition: CyclePartition,
    sets: [Vec<ColoredPermutation>; 4],
}

impl FixBlock {
    pub fn get(&self, kind: FixKind) -> &[ColoredPermutation] {
        &self.sets[kind.index()]
    }

    pub fn len(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all(&self) -> impl Iterator<Item = &ColoredPermutation> {
        self.sets.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixDecomposition {
    element: ColoredPermutation,
    p: u32,
    blocks: Vec<FixBlock>,
}

impl FixDecomposition {
    pub fn element(&self) -> &ColoredPermutation {
        &self.element
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// One block per partition in `Π²'¹(g)`, in the order produced by [`pi21`].
    pub fn blocks(&self) -> &[FixBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(FixBlock::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count(&self, kind: FixKind) -> usize {
        self.blocks.iter().map(|b| b.get(kind).len()).sum()
    }

    /// `(1/p) Σ_{w ∈ Fix(g)} φ_g(w)`.
    pub fn character_value(&self) -> Result<Cyclotomic> {
        let r = self.element.r();
        let mut units = Vec::with_capacity(self.len());
        for b in &self.blocks {
            for w in b.all() {
                units.push(phi(&self.element, w)?);
            }
        }
        sum_units(r, &units).exact_div_int(self.p as i64)
    }
}

/// `Σ φ_g(w)` over a list.
pub fn phi_sum(g: &ColoredPermutation, ws: &[ColoredPermutation]) -> Result<Cyclotomic> {
    let units = ws.iter().map(|w| phi(g, w)).collect::<Result<Vec<UnitScalar>>>()?;
    Ok(sum_units(g.r(), &units))
}

fn check_fix_params(g: &ColoredPermutation, p: u32) -> Result<()> {
    let r = g.r();
    if p == 0 || r % p != 0 {
        return Err(Error::InvalidParams(format!("p = {p} must divide r = {r}")));
    }
    let d = gcd_u32(p, g.n() as u32);
    if d > 2 {
        return Err(Error::Precondition(format!(
            "GCD(p,n) = {d}: elements of Fix(g) need not be symmetric or antisymmetric"
        )));
    }
    Ok(())
}

fn empty_blocks(g: &ColoredPermutation) -> Result<(Vec<CyclePartition>, Vec<[Vec<ColoredPermutation>; 4]>)> {
    let parts = pi21(g)?;
    let sets = parts.iter().map(|_| Default::default()).collect();
    Ok((parts, sets))
}

fn assemble(g: &ColoredPermutation, p: u32, parts: Vec<CyclePartition>, sets: Vec<[Vec<ColoredPermutation>; 4]>) -> FixDecomposition {
    let blocks = parts
        .into_iter()
        .zip(sets)
        .map(|(partition, mut sets)| {
            for s in &mut sets {
                s.sort();
            }
            FixBlock { partition, sets }
        })
        .collect();
    FixDecomposition {
        element: g.clone(),
        p,
        blocks,
    }
}

/// Classifies `w ∈ G(r,n)` relative to `g` and `C_p`, or `None` if `w ∉ Fix(g)`.
pub fn classify(g: &ColoredPermutation, p: u32, w: &ColoredPermutation) -> Option<FixKind> {
    let r = g.r();
    let step = r / p;
    let sq = w.absolute_square().scalar_exponent()?;
    if sq % step != 0 {
        return None;
    }
    let conj = w.conjugate_by_perm(g.perm());
    // conj = ζ^k w with k a multiple of r/p
    let k = (0..p).map(|j| j * step).find(|&k| conj == w.scalar_mul(k as i64))?;
    let symmetric = sq == 0;
    let commuting = k == 0;
    let antisym = r % 2 == 0 && sq == r / 2;
    let anti = r % 2 == 0 && k == r / 2;
    match (symmetric, antisym, commuting, anti) {
        (true, _, true, _) => Some(FixKind::SPlus),
        (true, _, _, true) => Some(FixKind::SMinus),
        (_, true, true, _) => Some(FixKind::APlus),
        (_, true, _, true) => Some(FixKind::AMinus),
        _ => None,
    }
}

/// `Fix(g)` by filtering every coloring of every involution commuting with `|g|`.
pub fn fix_brute(g: &ColoredPermutation, p: u32, bound: u128) -> Result<FixDecomposition> {
    check_fix_params(g, p)?;
    let (r, n) = (g.r(), g.n());
    let colorings = (r as u128).checked_pow(n as u32).ok_or(Error::Overflow)?;
    let sigmas: Vec<Vec<usize>> = involutions(n)
        .into_iter()
        .filter(|s| (0..n).all(|i| s[g.image(i)] == g.image(s[i])))
        .collect();
    let work = colorings.saturating_mul(sigmas.len() as u128);
    if work > bound {
        return Err(Error::SizeBound { size: work, bound });
    }
    let (parts, mut sets) = empty_blocks(g)?;
    for sigma in sigmas {
        let dummy = ColoredPermutation::from_parts_unchecked(r, sigma.clone(), vec![0; n]);
        let pi = partition_of(g, &dummy)?;
        let slot = parts
            .iter()
            .position(|q| q.parts() == pi.parts())
            .expect("every induced partition is enumerated");
        let mut colors = vec![0u32; n];
        loop {
            let w = ColoredPermutation::from_parts_unchecked(r, sigma.clone(), colors.clone());
            if let Some(kind) = classify(g, p, &w) {
                sets[slot][kind.index()].push(w);
            }
            if !advance(&mut colors, r) {
                break;
            }
        }
    }
    Ok(assemble(g, p, parts, sets))
}

fn advance(colors: &mut [u32], r: u32) -> bool {
    for c in colors.iter_mut().rev() {
        *c += 1;
        if *c < r {
            return true;
        }
        *c = 0;
    }
    false
}

/// A partial colored map on the support of one part: `(source, target, color)`.
type Piece = Vec<(usize, usize, u32)>;

fn part_families(pi: &CyclePartition, part: &Part, r: u32, p: u32) -> [Vec<Piece>; 4] {
    let half = r / 2;
    let signs = r % 2 == 0 && p % 2 == 0;
    // (−1)^h as a color offset, h counted from 1
    let sgn = |h: usize| -> u32 { if h % 2 == 1 { half } else { 0 } };
    let mut out: [Vec<Piece>; 4] = Default::default();
    match *part {
        Part::Single(c) => {
            let is = pi.support(c);
            let d = is.len();
            for k in 0..r {
                out[0].push((0..d).map(|t| (is[t], is[t], k)).collect());
                if d % 2 == 0 {
                    out[0].push((0..d).map(|t| (is[t], is[(t + d / 2) % d], k)).collect());
                }
                if d % 2 == 0 && signs {
                    let diag: Piece = (0..d).map(|t| (is[t], is[t], (k + sgn(t + 1)) % r)).collect();
                    let half_turn: Piece = (0..d)
                        .map(|t| (is[t], is[(t + d / 2) % d], (k + sgn(t + 1)) % r))
                        .collect();
                    out[1].push(diag);
                    if d % 4 == 2 {
                        out[3].push(half_turn);
                    } else {
                        out[1].push(half_turn);
                    }
                }
            }
        }
        Part::Pair(a, b) => {
            let is = pi.support(a);
            let js = pi.support(b);
            let d = is.len();
            for k in 0..r {
                for l in 0..d {
                    // i_h ↦ j_{h+l}, j_h ↦ i_{h-l}
                    let fwd = |t: usize| js[(t + l) % d];
                    let back = |t: usize| is[(t + d - l) % d];
                    let build = |ci: &dyn Fn(usize) -> u32, cj: &dyn Fn(usize) -> u32| -> Piece {
                        (0..d)
                            .map(|t| (is[t], fwd(t), ci(t) % r))
                            .chain((0..d).map(|t| (js[t], back(t), cj(t) % r)))
                            .collect()
                    };
                    out[0].push(build(&|_| k, &|_| k));
                    if signs {
                        out[2].push(build(&|_| k, &|_| k + half));
                        if d % 2 == 0 {
                            // (−1)^{h−l} with h − l taken in Z_d
                            let h_minus_l = |t: usize| (t + d - l) % d + 1;
                            out[1].push(build(&|t| k + sgn(t + 1), &|t| k + sgn(h_minus_l(t))));
                            out[3].push(build(&|t| k + sgn(t + 1), &|t| k + half + sgn(h_minus_l(t))));
                        }
                    }
                }
            }
        }
    }
    for family in &mut out {
        family.sort();
        family.dedup();
    }
    out
}

/// `Fix(g)` assembled part by part from the explicit families.
pub fn fix_table(g: &ColoredPermutation, p: u32) -> Result<FixDecomposition> {
    check_fix_params(g, p)?;
    let (r, n) = (g.r(), g.n());
    let (parts, mut sets) = empty_blocks(g)?;
    for (slot, pi) in parts.iter().enumerate() {
        let families: Vec<[Vec<Piece>; 4]> = pi.parts().iter().map(|s| part_families(pi, s, r, p)).collect();
        for kind in FixKind::ALL {
            let lists: Vec<&Vec<Piece>> = families.iter().map(|f| &f[kind.index()]).collect();
            let out = &mut sets[slot][kind.index()];
            product(&lists, &mut vec![0; lists.len()], 0, &mut |choice| {
                let mut perm = vec![0usize; n];
                let mut colors = vec![0u32; n];
                for (list, &c) in lists.iter().zip(choice) {
                    for &(i, j, z) in &list[c] {
                        perm[i] = j;
                        colors[i] = z;
                    }
                }
                out.push(ColoredPermutation::from_parts_unchecked(r, perm, colors));
            });
        }
        // The per-part families must already sit in the right set.
        for kind in FixKind::ALL {
            if let Some(bad) = sets[slot][kind.index()].iter().find(|w| classify(g, p, w) != Some(kind)) {
                return Err(Error::Mismatch(format!("{bad} listed as {kind:?} for {g}")));
            }
        }
    }
    Ok(assemble(g, p, parts, sets))
}

fn product(lists: &[&Vec<Piece>], choice: &mut Vec<usize>, depth: usize, f: &mut dyn FnMut(&[usize])) {
    if depth == lists.len() {
        f(choice);
        return;
    }
    for i in 0..lists[depth].len() {
        choice[depth] = i;
        product(lists, choice, depth + 1, f);
    }
}

/// Per-kind sizes of each block, keyed by the parts of the partition.
pub fn block_sizes(d: &FixDecomposition) -> BTreeMap<Vec<Part>, [usize; 4]> {
    d.blocks()
        .iter()
        .map(|b| {
            let sizes = FixKind::ALL.map(|k| b.get(k).len());
            (b.partition.parts().to_vec(), sizes)
        })
        .collect()
}

/// Whether two decompositions contain the same elements in the same blocks.
pub fn same_decomposition(a: &FixDecomposition, b: &FixDecomposition) -> bool {
    let key = |d: &FixDecomposition| -> BTreeSet<(Vec<Part>, FixKind, ColoredPermutation)> {
        d.blocks()
            .iter()
            .flat_map(|blk| {
                FixKind::ALL.into_iter().flat_map(move |k| {
                    blk.get(k)
                        .iter()
                        .map(move |w| (blk.partition.parts().to_vec(), k, w.clone()))
                })
            })
            .collect()
    };
    a.element == b.element && a.p == b.p && a.len() == b.len() && key(a) == key(b)
}
