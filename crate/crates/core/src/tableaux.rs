//! Ferrers r-tuples, standard multitableaux and their cyclic-shift quotients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupParams;

/// Partitions of `n` as weakly decreasing part lists, largest first
/// (`[n]`, `[n-1,1]`, …).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `lambda` (hook-length formula).
pub fn hook_count(lambda: &[u32]) -> u128 {
    let n: u32 = lambda.iter().sum();
    let mut hooks: Vec<u128> = Vec::with_capacity(n as usize);
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&l| l > j).count() as u32;
            hooks.push((arm + leg + 1) as u128);
        }
    }
    // Divide as we go to keep intermediates small.
    let mut result: u128 = 1;
    let mut pending: Vec<u128> = hooks;
    for k in 2..=n as u128 {
        result *= k;
        pending.retain(|&h| {
            if h > 1 && result % h == 0 {
                result /= h;
                false
            } else {
                true
            }
        });
    }
    for h in pending {
        debug_assert_eq!(result % h, 0);
        result /= h;
    }
    result
}

/// Rotation of an r-tuple: `shifted(s)[i] = self[(i + s) mod r]`.
pub trait Shift {
    fn slots(&self) -> usize;
    fn shifted(&self, steps: usize) -> Self;
}

/// An r-tuple of partitions `(λ^(0), …, λ^(r-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FerrersMulti {
    parts: Vec<Vec<u32>>,
}

impl FerrersMulti {
    pub fn new(parts: Vec<Vec<u32>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidElement("a Ferrers tuple needs r >= 1 slots".into()));
        }
        for lambda in &parts {
            if lambda.iter().any(|&x| x == 0) || lambda.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidElement(format!("{lambda:?} is not a partition")));
            }
        }
        Ok(FerrersMulti { parts })
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().flatten().sum()
    }

    /// `z(μ) = Σ i |λ^(i)|` in `Z_r`.
    pub fn color(&self) -> u32 {
        let r = self.r() as u64;
        let total: u64 = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, l)| i as u64 * l.iter().map(|&x| x as u64).sum::<u64>())
            .sum();
        (total % r) as u32
    }

    /// `|ST_μ| = multinomial(n; |λ^(0)|, …) · Π f(λ^(i))`.
    pub fn st_count(&self) -> u128 {
        let mut result: u128 = 1;
        let mut placed: u128 = 0;
        for lambda in &self.parts {
            let size: u128 = lambda.iter().map(|&x| x as u128).sum();
            // multiply by C(placed + size, size)
            for k in 1..=size {
                result = result * (placed + k) / k;
            }
            placed += size;
            result *= hook_count(lambda);
        }
        result
    }
}

impl Shift for FerrersMulti {
    fn slots(&self) -> usize {
        self.r()
    }
    fn shifted(&self, steps: usize) -> Self {
        let r = self.r();
        FerrersMulti {
            parts: (0..r).map(|i| self.parts[(i + steps) % r].clone()).collect(),
        }
    }
}

/// All of `Fer(r,n)`, or `Fer(r,p,n)` when `color_mod = Some(p)`, sorted.
pub fn enumerate_fer(r: usize, n: u32, color_mod: Option<u32>) -> Vec<FerrersMulti> {
    assert!(r >= 1);
    let by_size: Vec<Vec<Vec<u32>>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u32>> = Vec::with_capacity(r);
    fn go(
        slot: usize,
        left: u32,
        r: usize,
        by_size: &[Vec<Vec<u32>>],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<FerrersMulti>,
    ) {
        if slot == r - 1 {
            for lambda in &by_size[left as usize] {
                cur.push(lambda.clone());
                out.push(FerrersMulti { parts: cur.clone() });
                cur.pop();
            }
            return;
        }
        for size in 0..=left {
            for lambda in &by_size[size as usize] {
                cur.push(lambda.clone());
                go(slot + 1, left - size, r, by_size, cur, out);
                cur.pop();
            }
        }
    }
    go(0, n, r, &by_size, &mut cur, &mut out);
    if let Some(p) = color_mod {
        out.retain(|mu| mu.color() % p == 0);
    }
    out.sort();
    out
}

/// A filling of an r-tuple of diagrams with `1..=n`, rows and columns increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiTableau {
    slots: Vec<Vec<Vec<u32>>>,
}

impl MultiTableau {
    /// Builds and validates a standard multitableau.
    pub fn new(slots: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let t = MultiTableau { slots };
        if !t.is_standard() {
            return Err(Error::InvalidElement("not a standard multitableau".into()));
        }
        Ok(t)
    }

    pub(crate) fn from_slots_unchecked(slots: Vec<Vec<Vec<u32>>>) -> Self {
        MultiTableau { slots }
    }

    pub fn slots(&self) -> &[Vec<Vec<u32>>] {
        &self.slots
    }

    pub fn size(&self) -> usize {
        self.slots.iter().flatten().map(Vec::len).sum()
    }

    pub fn shape(&self) -> FerrersMulti {
        FerrersMulti {
            parts: self
                .slots
                .iter()
                .map(|rows| rows.iter().map(|row| row.len() as u32).collect())
                .collect(),
        }
    }

    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for rows in &self.slots {
            for (i, row) in rows.iter().enumerate() {
                if row.is_empty() {
                    return false;
                }
                if i > 0 && rows[i - 1].len() < row.len() {
                    return false;
                }
                for (j, &x) in row.iter().enumerate() {
                    if x == 0 || x as usize > n || seen[x as usize] {
                        return false;
                    }
                    seen[x as usize] = true;
                    if j > 0 && row[j - 1] >= x {
                        return false;
                    }
                    if i > 0 && rows[i - 1][j] >= x {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Shift for MultiTableau {
    fn slots(&self) -> usize {
        self.slots.len()
    }
    fn shifted(&self, steps: usize) -> Self {
        let r = self.slots.len();
        MultiTableau {
            slots: (0..r).map(|i| self.slots[(i + steps) % r].clone()).collect(),
        }
    }
}

/// All standard fillings of `mu`, sorted.
pub fn enumerate_st(mu: &FerrersMulti, bound: u128) -> Result<Vec<MultiTableau>> {
    let count = mu.st_count();
    if count > bound {
        return Err(Error::SizeBound { size: count, bound });
    }
    let n = mu.size();
    let mut cur: Vec<Vec<Vec<u32>>> = mu
        .parts
        .iter()
        .map(|l| l.iter().map(|_| Vec::new()).collect())
        .collect();
    let mut out = Vec::with_capacity(count as usize);
    fn go(
        k: u32,
        n: u32,
        mu: &FerrersMulti,
        cur: &mut Vec<Vec<Vec<u32>>>,
        out: &mut Vec<MultiTableau>,
    ) {
        if k > n {
            out.push(MultiTableau { slots: cur.clone() });
            return;
        }
        for s in 0..mu.parts.len() {
            for row in 0..mu.parts[s].len() {
                let len = cur[s][row].len();
                let fits = (len as u32) < mu.parts[s][row]
                    && (row == 0 || cur[s][row - 1].len() > len);
                if fits {
                    cur[s][row].push(k);
                    go(k + 1, n, mu, cur, out);
                    cur[s][row].pop();
                }
            }
        }
    }
    go(1, n, mu, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

/// An orbit of the cyclic group acting by shifts, with its stabilizer order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitClass<T> {
    pub representative: T,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

/// The orbit of `item` under `C_q` acting by shifts of `r/q` positions.
pub fn orbit_of<T: Shift + Ord + Clone>(item: &T, q: usize) -> Result<OrbitClass<T>> {
    let r = item.slots();
    if q == 0 || r % q != 0 {
        return Err(Error::InvalidParams(format!("q={q} does not divide r={r}")));
    }
    let step = r / q;
    let mut members: Vec<T> = (0..q).map(|k| item.shifted(k * step)).collect();
    members.sort();
    members.dedup();
    let orbit_size = members.len();
    Ok(OrbitClass {
        representative: members.swap_remove(0),
        orbit_size,
        stabilizer_order: q / orbit_size,
    })
}

/// Quotient of `items` by `C_q` acting through shifts of `r/q`; sorted by representative.
pub fn orbit_quotient<T: Shift + Ord + Clone>(items: &[T], q: usize) -> Result<Vec<OrbitClass<T>>> {
    let mut out = items
        .iter()
        .map(|x| orbit_of(x, q))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// `Fer(r,p,q,n)`: shapes with `z ≡ 0 mod p`, modulo shifts of `r/q`.
pub fn fer_classes(params: GroupParams) -> Vec<OrbitClass<FerrersMulti>> {
    let shapes = enumerate_fer(params.r() as usize, params.n() as u32, Some(params.p()));
    orbit_quotient(&shapes, params.q() as usize).expect("q divides r")
}

/// `|ST_μ|` for a class `μ` of `Fer(r,p,q,n)`: the shift acts freely on
/// tableaux, so the count is `st(rep) / |stabilizer|`.
pub fn class_st_count(class: &OrbitClass<FerrersMulti>) -> u128 {
    let st = class.representative.st_count();
    let stab = class.stabilizer_order as u128;
    debug_assert_eq!(st % stab, 0);
    st / stab
}

/// Sum of the dimensions of the irreducible representations of `G(r,p,q,n)`:
/// `Σ_{μ ∈ Fer(r,q,p,n)} |(C_p)_μ| · |ST_μ|`.
pub fn model_dimension(params: GroupParams) -> u128 {
    fer_classes(params.dual())
        .iter()
        .map(|c| c.stabilizer_order as u128 * class_st_count(c))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fm(parts: &[&[u32]]) -> FerrersMulti {
        FerrersMulti::new(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn fer_counts() {
        assert_eq!(enumerate_fer(1, 4, None).len(), 5);
        assert_eq!(enumerate_fer(2, 1, None).len(), 2);
        assert_eq!(enumerate_fer(2, 2, None).len(), 5);
        let filtered = enumerate_fer(2, 2, Some(2));
        assert_eq!(filtered.len(), 4);
        assert!(!filtered.contains(&fm(&[&[1], &[1]])));
        for mu in enumerate_fer(3, 4, None) {
            assert_eq!(mu.size(), 4);
            for l in mu.parts() {
                assert!(l.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn shifts_and_orbits() {
        let split = fm(&[&[1], &[1]]);
        let o = orbit_of(&split, 2).unwrap();
        assert_eq!((o.orbit_size, o.stabilizer_order), (1, 2));
        let left = fm(&[&[2], &[]]);
        let o = orbit_of(&left, 2).unwrap();
        assert_eq!((o.orbit_size, o.stabilizer_order), (2, 1));
        assert_eq!(o.representative, fm(&[&[], &[2]]));
        assert_eq!(left.shifted(1), fm(&[&[], &[2]]));
        let all = enumerate_fer(4, 3, None);
        let trivial = orbit_quotient(&all, 1).unwrap();
        assert_eq!(trivial.len(), all.len());
        assert!(trivial.iter().all(|c| c.stabilizer_order == 1));
        assert!(orbit_of(&left, 3).is_err());
    }

    #[test]
    fn orbit_sizes_sum_to_input() {
        for (r, n, p, q) in [(4, 3, 2, 2), (6, 2, 3, 2), (4, 4, 4, 4), (6, 3, 2, 3)] {
            let shapes = enumerate_fer(r, n, Some(p));
            let classes = orbit_quotient(&shapes, q).unwrap();
            let total: usize = classes.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total, shapes.len());
            assert!(classes.iter().all(|c| q % c.stabilizer_order == 0));
        }
    }

    #[test]
    fn st_counts() {
        assert_eq!(fm(&[&[2, 1]]).st_count(), 2);
        assert_eq!(fm(&[&[1], &[1]]).st_count(), 2);
        assert_eq!(hook_count(&[3, 2]), 5);
        assert_eq!(hook_count(&[4, 3, 2, 1]), 768);
        for (r, n, total) in [(1usize, 4u32, 24u128), (2, 3, 48), (3, 2, 18)] {
            let sum: u128 = enumerate_fer(r, n, None).iter().map(|m| m.st_count().pow(2)).sum();
            assert_eq!(sum, total);
        }
    }

    #[test]
    fn standard_fillings() {
        let column = fm(&[&[1, 1, 1, 1]]);
        assert_eq!(enumerate_st(&column, 100).unwrap().len(), 1);
        let hook = fm(&[&[2, 1]]);
        let syt = enumerate_st(&hook, 100).unwrap();
        assert_eq!(
            syt,
            vec![
                MultiTableau::new(vec![vec![vec![1, 2], vec![3]]]).unwrap(),
                MultiTableau::new(vec![vec![vec![1, 3], vec![2]]]).unwrap(),
            ]
        );
        for mu in enumerate_fer(2, 3, None) {
            let all = enumerate_st(&mu, 1000).unwrap();
            assert_eq!(all.len() as u128, mu.st_count());
            assert!(all.iter().all(|t| t.is_standard() && t.shape() == mu));
        }
        assert!(enumerate_st(&fm(&[&[3, 2, 1]]), 3).is_err());
    }

    #[test]
    fn model_dimension_examples() {
        let p = |r, p, q, n| GroupParams::new(r, p, q, n).unwrap();
        assert_eq!(model_dimension(p(1, 1, 1, 4)), 10);
        assert_eq!(model_dimension(p(2, 1, 1, 2)), 6);
        assert_eq!(model_dimension(p(2, 2, 1, 2)), 4);
        for (r, n) in [(2usize, 3u32), (3, 3), (4, 2)] {
            let sum: u128 = enumerate_fer(r, n, None).iter().map(FerrersMulti::st_count).sum();
            assert_eq!(model_dimension(p(r as u32, 1, 1, n as usize)), sum);
        }
    }

    proptest! {
        #[test]
        fn shift_is_a_cyclic_action(r in 1usize..=6, n in 0u32..=4, s in 0usize..12, t in 0usize..12) {
            for mu in enumerate_fer(r, n, None) {
                prop_assert_eq!(mu.shifted(s).shifted(t), mu.shifted(s + t));
                prop_assert_eq!(mu.shifted(r), mu.clone());
                prop_assert_eq!(mu.shifted(s).st_count(), mu.st_count());
            }
        }
    }
}
