//! Robinson-Schensted for colored permutations (color-split insertion) and
//! its projection to the quotients `G(r,p,q,n)`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::group::{GroupParams, Group};
use crate::perm::ColoredPermutation;
use crate::report::{Check, VerificationReport};
use crate::tableaux::{fer_classes, orbit_of, class_st_count, MultiTableau, OrbitClass, Shift};

type Tableau = Vec<Vec<u32>>;

/// Classical row insertion of `(position, value)` pairs, positions increasing.
pub fn rsk_pairs(pairs: &[(u32, u32)]) -> (Tableau, Tableau) {
    let mut p: Tableau = Vec::new();
    let mut q: Tableau = Vec::new();
    for &(pos, val) in pairs {
        let mut x = val;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![pos]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(j) => {
                    std::mem::swap(&mut p[row][j], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(pos);
                    break;
                }
            }
        }
    }
    (p, q)
}

/// Slot receiving the entries of color `k`. The choice `-k` is what makes
/// `ζ_r g` rotate both tableaux one step to the left.
pub fn slot_of_color(r: u32, k: u32) -> usize {
    ((r - k % r) % r) as usize
}

/// Color-split RSK: entries `i` of color `k` go to slot `-k mod r`; `P` records
/// values `|g|(i)`, `Q` positions `i` (both 1-based).
pub fn rs_wreath(g: &ColoredPermutation) -> (MultiTableau, MultiTableau) {
    let r = g.r();
    let mut by_slot: Vec<Vec<(u32, u32)>> = vec![Vec::new(); r as usize];
    for i in 0..g.n() {
        by_slot[slot_of_color(r, g.color(i))].push((i as u32 + 1, g.image(i) as u32 + 1));
    }
    let (ps, qs): (Vec<Tableau>, Vec<Tableau>) = by_slot.iter().map(|pairs| rsk_pairs(pairs)).unzip();
    (
        MultiTableau::from_slots_unchecked(ps),
        MultiTableau::from_slots_unchecked(qs),
    )
}

/// `rs_wreath` on the canonical lift, both tableaux projected to `C_q`-orbits.
pub fn rs_projective(
    params: GroupParams,
    v: &ColoredPermutation,
) -> Result<(OrbitClass<MultiTableau>, OrbitClass<MultiTableau>)> {
    let canon = crate::group::ProjectiveElement::canonicalize(params, v)?;
    let (p, q) = rs_wreath(canon.lift());
    let qn = params.q() as usize;
    Ok((orbit_of(&p, qn)?, orbit_of(&q, qn)?))
}

fn first_failure<T: Send, F>(items: &[T], f: F) -> Option<(usize, String)>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync,
{
    items
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| f(x).map(|msg| (i, msg)))
        .min_by_key(|(i, _)| *i)
}

/// Exhaustive check of the correspondence on `G(r,p,q,n)`: shape equality,
/// fiber sizes `|(C_q)_μ|` and surjectivity onto same-shape pairs, the shift
/// and inverse-bar rules, injectivity on lifts, and (r even) the half-shift
/// characterization of `v v̄ = -1`.
pub fn rs_properties_check(params: GroupParams, bound: u128) -> Result<VerificationReport> {
    let group = Group::new(params, bound)?;
    let mut report = VerificationReport::new(params);
    let elements = group.elements();
    let images: Vec<(MultiTableau, MultiTableau)> = elements.par_iter().map(rs_wreath).collect();
    let r = params.r();

    let bad = first_failure(&images, |(p, q)| {
        (p.shape() != q.shape() || !p.is_standard() || !q.is_standard())
            .then(|| "P and Q differ in shape or are not standard".to_string())
    });
    report.push(match bad {
        None => Check::pass("same_shape", format!("{} elements", elements.len())),
        Some((i, msg)) => Check::fail("same_shape", msg, Some(elements[i].to_window())),
    });

    // Lifts are distinct elements of G(r,n), so their images must be distinct.
    let mut distinct: Vec<&(MultiTableau, MultiTableau)> = images.iter().collect();
    distinct.sort();
    distinct.dedup();
    report.push(if distinct.len() == images.len() {
        Check::pass("injective_on_lifts", format!("{} distinct pairs", images.len()))
    } else {
        Check::fail(
            "injective_on_lifts",
            format!("{} pairs for {} lifts", distinct.len(), images.len()),
            None,
        )
    });

    let shift_bad = first_failure(elements, |g| {
        let (p, q) = rs_wreath(g);
        let (p1, q1) = rs_wreath(&g.scalar_mul(1));
        (p1 != p.shifted(1) || q1 != q.shifted(1)).then(|| "zeta*g is not the one-step rotation".into())
    });
    report.push(match shift_bad {
        None => Check::pass("scalar_shift", "zeta_r g rotates (P,Q) one slot left"),
        Some((i, msg)) => Check::fail("scalar_shift", msg, Some(elements[i].to_window())),
    });

    let inv_bad = first_failure(elements, |g| {
        let (p, q) = rs_wreath(g);
        let (p1, q1) = rs_wreath(&g.bar().inverse());
        (p1 != q || q1 != p).then(|| "inverse of the conjugate does not swap P and Q".into())
    });
    report.push(match inv_bad {
        None => Check::pass("inverse_bar_swap", "bar(g)^-1 swaps P and Q"),
        Some((i, msg)) => Check::fail("inverse_bar_swap", msg, Some(elements[i].to_window())),
    });

    // Fibers over class pairs.
    let qn = params.q() as usize;
    let projected: Vec<(MultiTableau, MultiTableau)> = images
        .par_iter()
        .map(|(p, q)| {
            (
                orbit_of(p, qn).expect("q | r").representative,
                orbit_of(q, qn).expect("q | r").representative,
            )
        })
        .collect();
    let mut fibers: HashMap<&(MultiTableau, MultiTableau), usize> = HashMap::new();
    for pair in &projected {
        *fibers.entry(pair).or_default() += 1;
    }
    let shapes = fer_classes(params);
    let mut fiber_detail = Ok(format!("{} shape classes", shapes.len()));
    let mut hit_per_shape: HashMap<crate::tableaux::FerrersMulti, (usize, bool)> = HashMap::new();
    for ((p, q), count) in &fibers {
        let mu = orbit_of(&p.shape(), qn)?;
        let nu = orbit_of(&q.shape(), qn)?;
        if mu.representative != nu.representative {
            fiber_detail = Err((format!("class pair with different shapes {:?}", mu.representative), None));
            break;
        }
        let entry = hit_per_shape.entry(mu.representative.clone()).or_insert((0, true));
        entry.0 += 1;
        if *count != mu.stabilizer_order {
            entry.1 = false;
            fiber_detail = Err((
                format!(
                    "fiber of size {count} over shape {:?}, expected {}",
                    mu.representative, mu.stabilizer_order
                ),
                None,
            ));
        }
    }
    if fiber_detail.is_ok() {
        for class in &shapes {
            let expected = class_st_count(class).pow(2) as usize;
            let hit = hit_per_shape.get(&class.representative).map_or(0, |e| e.0);
            if hit != expected {
                fiber_detail = Err((
                    format!(
                        "shape {:?}: {hit} of {expected} same-shape pairs hit",
                        class.representative
                    ),
                    None,
                ));
                break;
            }
        }
    }
    report.push(Check::from_outcome("fiber_sizes", fiber_detail));

    if r % 2 == 0 {
        let half = (r / 2) as usize;
        let bad = first_failure(elements, |v| {
            let minus_one = v.absolute_square().scalar_exponent() == Some(r / 2);
            let (p, q) = rs_wreath(v);
            let paired = q == p.shifted(half);
            (minus_one != paired).then(|| format!("v vbar = -1 is {minus_one} but half-shift pairing is {paired}"))
        });
        report.push(match bad {
            None => Check::pass("antisymmetric_half_shift", "v vbar = -1 iff Q is the r/2-shift of P"),
            Some((i, msg)) => Check::fail("antisymmetric_half_shift", msg, Some(elements[i].to_window())),
        });
    }

    // Absolute involutions of the group land on pairs [P,P].
    let step = params.scalar_step();
    let bad = first_failure(elements, |v| {
        let sq = v.absolute_square();
        let is_abs = sq.scalar_exponent().is_some_and(|k| k % step == 0);
        if !is_abs {
            return None;
        }
        let (p, q) = rs_wreath(v);
        let (pc, qc) = (orbit_of(&p, qn).ok()?, orbit_of(&q, qn).ok()?);
        (pc.representative != qc.representative).then(|| "absolute involution not sent to [P,P]".into())
    });
    report.push(match bad {
        None => Check::pass("involutions_diagonal", "absolute involutions map to [P,P]"),
        Some((i, msg)) => Check::fail("involutions_diagonal", msg, Some(elements[i].to_window())),
    });

    Ok(report)
}
