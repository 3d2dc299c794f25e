use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::partition::{pi21, CyclePartition};
use crate::error::{Error, Result};
use crate::group::{gcd, gcd_u32, involutions, Group, GroupParams};
use crate::perm::ColoredPermutation;

/// Number of absolute square roots of `g` in `G(r,n)`, summed over cycle partitions.
pub fn asr_count(g: &ColoredPermutation) -> Result<u128> {
    let mut total: u128 = 0;
    for pi in pi21(g)? {
        if pi.has_even_singleton() || pi.parts().iter().any(|s| pi.part_color(s) != 0) {
            continue;
        }
        total = total.checked_add(pi.weight()?).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// The weight `ε_π ∈ {0,1,2}` of a partition with respect to `p`.
pub fn epsilon(pi: &CyclePartition, p: u32) -> u32 {
    let n = pi.element().n() as u32;
    let d = pi
        .parts()
        .iter()
        .fold(gcd_u32(p, n), |acc, s| gcd_u32(acc, pi.part_size(s) as u32));
    match d {
        1 => 1,
        2 => {
            let odd_pairs = pi
                .parts()
                .iter()
                .filter(|s| s.is_pair() && pi.cycles()[s.cycles()[0]].color() % 2 == 1)
                .count();
            if odd_pairs % 2 == 0 {
                2
            } else {
                0
            }
        }
        _ => 0,
    }
}

fn check_small_gcd(p: u32, n: usize) -> Result<()> {
    let d = gcd_u32(p, n as u32);
    if d > 2 {
        return Err(Error::Precondition(format!("GCD(p,n) = {d}, the count needs 1 or 2")));
    }
    Ok(())
}

/// Number of absolute square roots of `g` in `G(r,p,n)`, for `GCD(p,n) ≤ 2`.
pub fn asrgrpn_count(g: &ColoredPermutation, p: u32) -> Result<u128> {
    let r = g.r();
    if p == 0 || r % p != 0 {
        return Err(Error::InvalidParams(format!("p = {p} must divide r = {r}")));
    }
    check_small_gcd(p, g.n())?;
    if !g.is_member(p) {
        return Err(Error::NotMember { r, p, n: g.n() });
    }
    let mut total: u128 = 0;
    for pi in pi21(g)? {
        if pi.has_even_singleton() || pi.parts().iter().any(|s| pi.part_color(s) != 0) {
            continue;
        }
        let term = pi.weight()?.checked_mul(epsilon(&pi, p) as u128).ok_or(Error::Overflow)?;
        total = total.checked_add(term).ok_or(Error::Overflow)?;
    }
    if total % p as u128 != 0 {
        return Err(Error::NotDivisible {
            coefficient: total as i64,
            divisor: p as i64,
        });
    }
    Ok(total / p as u128)
}

/// Number of absolute square roots of the class of `g` in `G(r,p,q,n)`:
/// lifts `u` with `u ū ∈ g C_q`, counted once per class.
pub fn asr_quotient_count(params: GroupParams, g: &ColoredPermutation) -> Result<u128> {
    params.check_element(g)?;
    let q = params.q();
    let step = params.scalar_step() as i64;
    let mut total: u128 = 0;
    for k in 0..q as i64 {
        total += asrgrpn_count(&g.scalar_mul(k * step), params.p())?;
    }
    if total % q as u128 != 0 {
        return Err(Error::NotDivisible {
            coefficient: total as i64,
            divisor: q as i64,
        });
    }
    Ok(total / q as u128)
}

/// Absolute-square-root counts for a whole group, from one scan.
#[derive(Clone, Debug)]
pub struct SquareRootCounts {
    params: GroupParams,
    counts: HashMap<ColoredPermutation, u128>,
}

impl SquareRootCounts {
    pub fn scan(group: &Group) -> Self {
        let params = group.params();
        let counts = group
            .elements()
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<ColoredPermutation, u128>, u| {
                *acc.entry(params.canonical_lift(&u.absolute_square())).or_insert(0) += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
        SquareRootCounts { params, counts }
    }

    /// `#{u : u ū = g}` for any lift of `g`.
    pub fn get(&self, g: &ColoredPermutation) -> u128 {
        let key = self.params.canonical_lift(g);
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }
}

/// `#{u ∈ G : u ū = g}` by scanning `G`.
pub fn abs_sqrt_count_brute(params: GroupParams, g: &ColoredPermutation, bound: u128) -> Result<u128> {
    params.check_element(g)?;
    let group = Group::new(params, bound)?;
    Ok(SquareRootCounts::scan(&group).get(g))
}

/// Number of solutions of `a·x ≡ b (mod m)` in `Z_m^k`.
pub fn mod_lin_solutions(a: &[i64], b: i64, m: u64) -> Result<u128> {
    if m == 0 || a.is_empty() {
        return Err(Error::InvalidParams("need m ≥ 1 and at least one coefficient".into()));
    }
    let d = a.iter().fold(m, |acc, &x| gcd(acc, x.unsigned_abs()));
    if b.rem_euclid(d as i64) != 0 {
        return Ok(0);
    }
    let base = (m as u128).checked_pow(a.len() as u32 - 1).ok_or(Error::Overflow)?;
    base.checked_mul(d as u128).ok_or(Error::Overflow)
}

fn exact_ratio(num: u128, den: u128) -> Result<u128> {
    if num % den != 0 {
        return Err(Error::NotDivisible {
            coefficient: num as i64,
            divisor: den as i64,
        });
    }
    Ok(num / den)
}

/// Closed-form number of absolute involutions of `G(r,p,q,n)` with `|g| = σ`.
pub fn involutions_over_sigma(params: GroupParams, sigma: &[usize]) -> Result<u128> {
    let (r, p, q, n) = (params.r() as u128, params.p() as u128, params.q() as u128, params.n());
    let fixed = (0..n).filter(|&i| sigma[i] == i).count();
    let c = fixed + (n - fixed) / 2;
    let rc = r.checked_pow(c as u32).ok_or(Error::Overflow)?;
    if fixed > 0 {
        return exact_ratio(rc, p * q);
    }
    let nr = n as u128 * r;
    let factor = if p % 2 == 0 && q % 2 == 0 && nr % 4 == 0 && (nr / 4) % 2 == 1 {
        2
    } else {
        gcd(2, p as u64) as u128 * gcd(2, q as u64) as u128
    };
    exact_ratio(factor * rc, p * q)
}

/// `Σ_σ` of [`involutions_over_sigma`] over the involutions of `S_n`.
pub fn involution_count_formula(params: GroupParams) -> Result<u128> {
    involutions(params.n())
        .iter()
        .map(|s| involutions_over_sigma(params, s))
        .sum()
}

/// Brute count of absolute involutions with a given underlying permutation.
pub fn involutions_over_sigma_brute(params: GroupParams, sigma: &[usize], bound: u128) -> Result<u128> {
    params.check_size(bound)?;
    let r = params.r();
    let step = params.scalar_step();
    Ok(crate::group::canonical_colorings(params)
        .filter(|colors| {
            let w = ColoredPermutation::from_parts_unchecked(r, sigma.to_vec(), colors.clone());
            matches!(w.absolute_square().scalar_exponent(), Some(k) if k % step == 0)
        })
        .count() as u128)
}

/// The involutory verdict with a short reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub group: [u64; 4],
    pub involutory: bool,
    pub branch: String,
}

pub fn is_involutory(params: GroupParams) -> bool {
    classify(params).involutory
}

pub fn classify(params: GroupParams) -> Classification {
    let (r, p, q, n) = (params.r(), params.p(), params.q(), params.n() as u32);
    let d = gcd_u32(p, n);
    let (involutory, branch) = match d {
        1 | 2 => (true, format!("GCD={d}")),
        4 if [r, p, q, n].iter().all(|x| x % 8 == 4) => (true, "GCD=4, all ≡ 4 mod 8".to_string()),
        4 => (false, "GCD=4, not all ≡ 4 mod 8".to_string()),
        _ => (false, format!("GCD={d}")),
    };
    Classification {
        group: params.as_array(),
        involutory,
        branch,
    }
}
