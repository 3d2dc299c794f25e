//! The groups `G(r,p,n)` and their projective quotients `G(r,p,q,n) = G(r,p,n)/C_q`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::ColoredPermutation;

/// Default guard for anything that enumerates a whole group.
pub const DEFAULT_MAX_GROUP_SIZE: u128 = 1_000_000;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn gcd_u32(a: u32, b: u32) -> u32 {
    gcd(a as u64, b as u64) as u32
}

/// Parameters `(r,p,q,n)` with `p | r`, `q | r` and `pq | rn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupParams {
    r: u32,
    p: u32,
    q: u32,
    n: usize,
}

impl GroupParams {
    pub fn new(r: u32, p: u32, q: u32, n: usize) -> Result<Self> {
        if r == 0 || p == 0 || q == 0 || n == 0 {
            return Err(Error::InvalidParams(format!(
                "G({r},{p},{q},{n}): all parameters must be positive"
            )));
        }
        if r % p != 0 {
            return Err(Error::InvalidParams(format!("p={p} does not divide r={r}")));
        }
        if r % q != 0 {
            return Err(Error::InvalidParams(format!("q={q} does not divide r={r}")));
        }
        if (r as u64 * n as u64) % (p as u64 * q as u64) != 0 {
            return Err(Error::InvalidParams(format!(
                "pq={} does not divide rn={}",
                p * q,
                r as u64 * n as u64
            )));
        }
        Ok(GroupParams { r, p, q, n })
    }

    /// `G(r,p,n)` with trivial quotient.
    pub fn reflection(r: u32, p: u32, n: usize) -> Result<Self> {
        Self::new(r, p, 1, n)
    }

    /// The full wreath product `G(r,n)`.
    pub fn wreath(r: u32, n: usize) -> Result<Self> {
        Self::new(r, 1, 1, n)
    }

    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }

    /// `G(r,q,p,n)`.
    pub fn dual(&self) -> Self {
        GroupParams {
            r: self.r,
            p: self.q,
            q: self.p,
            n: self.n,
        }
    }

    /// `r / q`: the color step of the scalar generator `ζ_q I`.
    pub fn scalar_step(&self) -> u32 {
        self.r / self.q
    }

    /// `r^n n! / (pq)`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for _ in 0..self.n {
            total = total.checked_mul(self.r as u128)?;
        }
        for k in 2..=self.n as u128 {
            total = total.checked_mul(k)?;
        }
        Some(total / (self.p as u128 * self.q as u128))
    }

    /// Errors unless the group has at most `bound` elements.
    pub fn check_size(&self, bound: u128) -> Result<u128> {
        match self.order() {
            Some(size) if size <= bound => Ok(size),
            Some(size) => Err(Error::SizeBound { size, bound }),
            None => Err(Error::SizeBound {
                size: u128::MAX,
                bound,
            }),
        }
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.r as u64, self.p as u64, self.q as u64, self.n as u64]
    }

    pub(crate) fn check_element(&self, g: &ColoredPermutation) -> Result<()> {
        if g.r() != self.r || g.n() != self.n {
            return Err(Error::Mismatch(format!(
                "element of G({},{}) used in {self}",
                g.r(),
                g.n()
            )));
        }
        if !g.is_member(self.p) {
            return Err(Error::NotMember {
                r: self.r,
                p: self.p,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Canonical lift: the translate `ζ_r^{k r/q} g` with lexicographically
    /// smallest colors, i.e. with `z_1 < r/q`.
    pub fn canonical_lift(&self, g: &ColoredPermutation) -> ColoredPermutation {
        let step = self.scalar_step();
        let first = g.colors().first().copied().unwrap_or(0);
        let shift = first - first % step;
        if shift == 0 {
            g.clone()
        } else {
            g.scalar_mul(-(shift as i64))
        }
    }

    pub fn is_canonical(&self, g: &ColoredPermutation) -> bool {
        g.colors().first().map_or(true, |&c| c < self.scalar_step())
    }
}

/// Serializes parameters as `[r,p,q,n]`.
pub(crate) fn params_as_array<S: Serializer>(p: &GroupParams, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.as_array().serialize(s)
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{},{})", self.r, self.p, self.q, self.n)
    }
}

/// A class of `G(r,p,q,n)`, stored by its canonical lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveElement {
    params: GroupParams,
    lift: ColoredPermutation,
}

impl ProjectiveElement {
    pub fn canonicalize(params: GroupParams, lift: &ColoredPermutation) -> Result<Self> {
        params.check_element(lift)?;
        Ok(ProjectiveElement {
            params,
            lift: params.canonical_lift(lift),
        })
    }

    pub fn identity(params: GroupParams) -> Self {
        ProjectiveElement {
            params,
            lift: ColoredPermutation::identity(params.r, params.n),
        }
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn lift(&self) -> &ColoredPermutation {
        &self.lift
    }

    pub fn into_lift(self) -> ColoredPermutation {
        self.lift
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::Mismatch(format!("{} vs {}", self.params, other.params)));
        }
        Self::canonicalize(self.params, &self.lift.compose(&other.lift)?)
    }

    pub fn inverse(&self) -> Self {
        ProjectiveElement {
            params: self.params,
            lift: self.params.canonical_lift(&self.lift.inverse()),
        }
    }

    pub fn bar(&self) -> Self {
        ProjectiveElement {
            params: self.params,
            lift: self.params.canonical_lift(&self.lift.bar()),
        }
    }

    /// `v v̄ ∈ C_q`.
    pub fn is_absolute_involution(&self) -> bool {
        is_absolute_involution_lift(self.params, &self.lift)
    }
}

/// True when both lifts name the same class of `G(r,p,q,n)`.
pub fn proj_equal(params: GroupParams, a: &ColoredPermutation, b: &ColoredPermutation) -> bool {
    a.perm() == b.perm() && params.canonical_lift(a) == params.canonical_lift(b)
}

fn is_absolute_involution_lift(params: GroupParams, v: &ColoredPermutation) -> bool {
    v.is_involution_perm()
        && v
            .absolute_square()
            .scalar_exponent()
            .is_some_and(|k| k % params.scalar_step() == 0)
}

impl fmt::Display for ProjectiveElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lift.fmt(f)
    }
}

impl Serialize for ProjectiveElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.lift.serialize(s)
    }
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All permutations of `{0,…,n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// All involutions of `{0,…,n-1}` (identity included) in lexicographic order.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        let n = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        if cur[i] != usize::MAX {
            go(cur, i + 1, out);
            return;
        }
        cur[i] = i;
        go(cur, i + 1, out);
        cur[i] = usize::MAX;
        for j in i + 1..n {
            if cur[j] == usize::MAX {
                cur[i] = j;
                cur[j] = i;
                go(cur, i + 1, out);
                cur[i] = usize::MAX;
                cur[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], 0, &mut out);
    out.sort();
    out
}

/// Color vectors of the canonical lifts over a fixed permutation, in
/// mixed-radix order (last coordinate fastest): first color below `r/q`,
/// color sum divisible by `p`.
pub(crate) fn canonical_colorings(params: GroupParams) -> impl Iterator<Item = Vec<u32>> {
    let r = params.r;
    let n = params.n;
    let step = params.scalar_step();
    let p = params.p;
    let mut cur: Option<Vec<u32>> = Some(vec![0; n]);
    std::iter::from_fn(move || loop {
        let colors = cur.take()?;
        // advance
        let mut next = colors.clone();
        let mut pos = n;
        let mut done = true;
        while pos > 0 {
            pos -= 1;
            let limit = if pos == 0 { step } else { r };
            if next[pos] + 1 < limit {
                next[pos] += 1;
                done = false;
                break;
            }
            next[pos] = 0;
        }
        if !done {
            cur = Some(next);
        }
        let sum: u64 = colors.iter().map(|&c| c as u64).sum();
        if sum % p as u64 == 0 {
            return Some(colors);
        }
    })
}

/// Deterministic stream of the classes of `G(r,p,q,n)`: permutations in
/// lexicographic order, colors as mixed-radix counters, filtered by membership
/// and canonicality.
pub fn enumerate(params: GroupParams, bound: u128) -> Result<impl Iterator<Item = ProjectiveElement>> {
    params.check_size(bound)?;
    let r = params.r;
    Ok(all_permutations(params.n).into_iter().flat_map(move |perm| {
        canonical_colorings(params).map(move |colors| ProjectiveElement {
            params,
            lift: ColoredPermutation::from_parts_unchecked(r, perm.clone(), colors),
        })
    }))
}

/// A conjugacy class: minimal member in enumeration order and class size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: ColoredPermutation,
    #[serde(skip)]
    pub rep_index: usize,
    pub size: usize,
}

/// A fully enumerated group with index lookup.
#[derive(Clone, Debug)]
pub struct Group {
    params: GroupParams,
    elements: Vec<ColoredPermutation>,
}

impl Group {
    pub fn new(params: GroupParams, bound: u128) -> Result<Self> {
        let elements: Vec<ColoredPermutation> =
            enumerate(params, bound)?.map(ProjectiveElement::into_lift).collect();
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Ok(Group { params, elements })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ColoredPermutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ColoredPermutation {
        &self.elements[i]
    }

    /// Index of the class of `g` (any lift).
    pub fn index_of(&self, g: &ColoredPermutation) -> Option<usize> {
        if g.r() != self.params.r || g.n() != self.params.n || !g.is_member(self.params.p) {
            return None;
        }
        let canon = self.params.canonical_lift(g);
        self.elements.binary_search(&canon).ok()
    }

    pub fn index_of_canonical(&self, g: &ColoredPermutation) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let prod = self.elements[i].compose_unchecked(&self.elements[j]);
        self.index_of(&prod).expect("group is closed")
    }

    /// Generators of `G(r,p,n)`: adjacent transpositions, `diag(ζ^p,1,…)` and
    /// `diag(ζ,ζ^{-1},1,…)`.
    pub fn generators(params: GroupParams) -> Vec<ColoredPermutation> {
        let r = params.r;
        let n = params.n;
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            gens.push(ColoredPermutation::from_parts_unchecked(r, perm, vec![0; n]));
        }
        if params.p % r != 0 {
            let mut colors = vec![0; n];
            colors[0] = params.p % r;
            gens.push(ColoredPermutation::from_parts_unchecked(r, (0..n).collect(), colors));
        }
        if n >= 2 && r > 1 {
            let mut colors = vec![0; n];
            colors[0] = 1;
            colors[1] = r - 1;
            gens.push(ColoredPermutation::from_parts_unchecked(r, (0..n).collect(), colors));
        }
        gens
    }

    /// Conjugacy classes sorted by representative, and the class id of every element.
    pub fn conjugacy_classes(&self) -> (Vec<ConjugacyClass>, Vec<usize>) {
        let gens = Self::generators(self.params);
        let inv: Vec<ColoredPermutation> = gens.iter().map(ColoredPermutation::inverse).collect();
        let m = self.len();
        let mut class_of = vec![usize::MAX; m];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..m {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            stack.push(start);
            let mut size = 0;
            while let Some(x) = stack.pop() {
                size += 1;
                for (s, si) in gens.iter().zip(&inv) {
                    let y = s
                        .compose_unchecked(&self.elements[x])
                        .compose_unchecked(si);
                    let j = self.index_of(&y).expect("conjugation stays in the group");
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        stack.push(j);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: self.elements[start].clone(),
                rep_index: start,
                size,
            });
        }
        (classes, class_of)
    }
}

/// Candidate lifts of absolute involutions: canonical lifts over involutive
/// permutations.
fn involutive_lifts(params: GroupParams) -> impl Iterator<Item = ColoredPermutation> {
    let r = params.r;
    involutions(params.n).into_iter().flat_map(move |perm| {
        canonical_colorings(params)
            .map(move |colors| ColoredPermutation::from_parts_unchecked(r, perm.clone(), colors))
    })
}

/// `I(r,p,q,n)`: classes `v` with `v v̄ ∈ C_q`, computed from the definition.
pub fn absolute_involutions(params: GroupParams, bound: u128) -> Result<Vec<ColoredPermutation>> {
    params.check_size(bound)?;
    let mut out: Vec<ColoredPermutation> = involutive_lifts(params)
        .filter(|v| is_absolute_involution_lift(params, v))
        .collect();
    out.sort();
    Ok(out)
}

/// `I(r,p,q,n)` as symmetric classes together with antisymmetric ones when `q` is even.
pub fn absolute_involutions_by_symmetry(
    params: GroupParams,
    bound: u128,
) -> Result<Vec<ColoredPermutation>> {
    params.check_size(bound)?;
    let q_even = params.q % 2 == 0;
    let mut out: Vec<ColoredPermutation> = involutive_lifts(params)
        .filter(|v| v.is_symmetric() || (q_even && v.is_antisymmetric()))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: u32, p: u32, q: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, q, n).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(GroupParams::new(4, 3, 1, 2).is_err());
        assert!(GroupParams::new(4, 1, 3, 2).is_err());
        assert!(GroupParams::new(4, 4, 4, 1).is_err()); // 16 ∤ 4
        assert!(GroupParams::new(4, 4, 4, 4).is_ok());
        assert!(GroupParams::new(0, 1, 1, 2).is_err());
        assert_eq!(params(4, 2, 1, 3).dual(), params(4, 1, 2, 3));
    }

    #[test]
    fn orders() {
        assert_eq!(params(2, 1, 1, 2).order(), Some(8));
        assert_eq!(params(4, 4, 4, 4).order(), Some(384));
        assert_eq!(params(3, 3, 1, 3).order(), Some(54));
        for (r, p, q, n) in [(2, 1, 1, 2), (4, 4, 4, 4), (3, 3, 1, 3), (4, 2, 2, 3), (6, 3, 2, 2)] {
            let g = params(r, p, q, n);
            let count = enumerate(g, DEFAULT_MAX_GROUP_SIZE).unwrap().count() as u128;
            assert_eq!(Some(count), g.order(), "{g}");
        }
    }

    #[test]
    fn size_bound_is_enforced() {
        let g = params(3, 1, 1, 9);
        assert!(matches!(
            enumerate(g, DEFAULT_MAX_GROUP_SIZE),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn canonical_representatives() {
        let g = params(2, 1, 2, 1);
        let minus = ColoredPermutation::scalar(2, 1, 1);
        let e = ProjectiveElement::canonicalize(g, &minus).unwrap();
        assert_eq!(e.lift(), &ColoredPermutation::identity(2, 1));
        let q1 = params(4, 2, 1, 2);
        let x = ColoredPermutation::new(4, vec![1, 0], vec![3, 1]).unwrap();
        assert_eq!(ProjectiveElement::canonicalize(q1, &x).unwrap().lift(), &x);
        assert_eq!(enumerate(params(4, 1, 2, 1), 100).unwrap().count(), 2);
        // translates are identified, lift outside G(r,p,n) is refused
        let h = params(4, 2, 2, 2);
        let y = ColoredPermutation::new(4, vec![0, 1], vec![3, 1]).unwrap();
        assert!(proj_equal(h, &y, &y.scalar_mul(2)));
        assert!(!proj_equal(h, &y, &y.scalar_mul(1)));
        let bad = ColoredPermutation::new(4, vec![0, 1], vec![1, 0]).unwrap();
        assert!(ProjectiveElement::canonicalize(h, &bad).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        let g = params(4, 2, 2, 3);
        let all: Vec<_> = enumerate(g, 1000).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for e in &all {
            assert_eq!(ProjectiveElement::canonicalize(g, e.lift()).unwrap(), *e);
        }
    }

    #[test]
    fn generators_generate() {
        for (r, p, q, n) in [(2, 2, 1, 3), (4, 2, 2, 2), (3, 3, 1, 3), (6, 2, 1, 2), (5, 5, 1, 1), (4, 4, 1, 2)] {
            let g = Group::new(params(r, p, q, n), 10_000).unwrap();
            let gens: Vec<usize> = Group::generators(g.params())
                .iter()
                .map(|s| g.index_of(s).unwrap())
                .collect();
            let mut seen = vec![false; g.len()];
            let e = g.index_of(&ColoredPermutation::identity(r, n)).unwrap();
            seen[e] = true;
            let mut stack = vec![e];
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = g.mul(s, x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            assert!(seen.iter().all(|&b| b), "G({r},{p},{q},{n})");
        }
    }

    /// Orbit oracle: conjugate by every element.
    fn classes_by_full_conjugation(g: &Group) -> Vec<usize> {
        let m = g.len();
        let mut class_of = vec![usize::MAX; m];
        let mut sizes = Vec::new();
        for x in 0..m {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut size = 0;
            for h in g.elements() {
                let y = h.compose(g.element(x)).unwrap().compose(&h.inverse()).unwrap();
                let j = g.index_of(&y).unwrap();
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        sizes
    }

    #[test]
    fn conjugacy_class_counts() {
        let s3 = Group::new(params(1, 1, 1, 3), 100).unwrap();
        assert_eq!(s3.conjugacy_classes().0.len(), 3);
        let b2 = Group::new(params(2, 1, 1, 2), 100).unwrap();
        let (classes, _) = b2.conjugacy_classes();
        assert_eq!(classes.len(), 5);
        for (r, p, q, n) in [(2, 1, 1, 2), (4, 2, 2, 2), (3, 1, 1, 2), (2, 2, 1, 4), (4, 1, 2, 2)] {
            let g = Group::new(params(r, p, q, n), 10_000).unwrap();
            let (classes, class_of) = g.conjugacy_classes();
            let total: usize = classes.iter().map(|c| c.size).sum();
            assert_eq!(total, g.len());
            for c in &classes {
                assert_eq!(g.len() % c.size, 0);
                assert_eq!(class_of[c.rep_index], class_of[c.rep_index]);
                // representative is the minimal member
                assert!(class_of
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k == class_of[c.rep_index])
                    .all(|(i, _)| i >= c.rep_index));
            }
            let mut expected = classes_by_full_conjugation(&g);
            let mut got: Vec<usize> = classes.iter().map(|c| c.size).collect();
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn involution_lists() {
        assert_eq!(involutions(4).len(), 10);
        assert_eq!(involutions(0).len(), 1);
        assert_eq!(involutions(5).len(), 26);
        assert!(involutions(6).windows(2).all(|w| w[0] < w[1]));
    }

    fn brute_absolute_involutions(g: GroupParams) -> Vec<ColoredPermutation> {
        enumerate(g, 1_000_000)
            .unwrap()
            .filter(|e| {
                let sq = e.lift().absolute_square();
                sq.scalar_exponent()
                    .is_some_and(|k| k % g.scalar_step() == 0)
            })
            .map(ProjectiveElement::into_lift)
            .collect()
    }

    #[test]
    fn absolute_involution_examples() {
        assert_eq!(absolute_involutions(params(2, 1, 1, 2), 100).unwrap().len(), 6);
        assert_eq!(absolute_involutions(params(1, 1, 1, 4), 100).unwrap().len(), 10);
        let odd = params(3, 1, 1, 3);
        let all = absolute_involutions(odd, 1000).unwrap();
        assert!(all.iter().all(ColoredPermutation::is_symmetric));
    }

    #[test]
    fn absolute_involution_routes_agree() {
        for (r, p, q, n) in [
            (2, 1, 1, 3),
            (4, 2, 2, 2),
            (4, 1, 2, 3),
            (4, 2, 4, 2),
            (6, 2, 2, 2),
            (3, 3, 1, 3),
            (2, 2, 2, 4),
            (8, 4, 2, 2),
        ] {
            let g = params(r, p, q, n);
            let a = absolute_involutions(g, 100_000).unwrap();
            let b = absolute_involutions_by_symmetry(g, 100_000).unwrap();
            let c = brute_absolute_involutions(g);
            assert_eq!(a, b, "{g}");
            assert_eq!(a, c, "{g}");
        }
    }
}
