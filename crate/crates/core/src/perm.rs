//! Colored permutations: the elements of `G(r,n)`.

use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `G(r,n)`: a permutation `|g|` of `{0,…,n-1}` and colors in `Z_r`.
///
/// Indices are 0-based internally; the window notation is 1-based.
/// The derived order (permutation first, then colors lexicographically) is the
/// enumeration order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    r: u32,
    perm: Vec<usize>,
    colors: Vec<u32>,
}

/// Result of comparing an element with its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
    Neither,
}

fn mod_r(x: i64, r: u32) -> u32 {
    x.rem_euclid(r as i64) as u32
}

impl ColoredPermutation {
    pub fn new(r: u32, perm: Vec<usize>, colors: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidElement("modulus must be positive".into()));
        }
        if perm.len() != colors.len() {
            return Err(Error::InvalidElement(format!(
                "{} images but {} colors",
                perm.len(),
                colors.len()
            )));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &j in &perm {
            if j >= n || seen[j] {
                return Err(Error::InvalidElement(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[j] = true;
        }
        if let Some(c) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidElement(format!("color {c} outside Z_{r}")));
        }
        Ok(ColoredPermutation { r, perm, colors })
    }

    pub(crate) fn from_parts_unchecked(r: u32, perm: Vec<usize>, colors: Vec<u32>) -> Self {
        debug_assert!(Self::new(r, perm.clone(), colors.clone()).is_ok());
        ColoredPermutation { r, perm, colors }
    }

    pub fn identity(r: u32, n: usize) -> Self {
        ColoredPermutation {
            r,
            perm: (0..n).collect(),
            colors: vec![0; n],
        }
    }

    /// A plain permutation, all colors zero.
    pub fn from_perm(r: u32, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(r, perm, vec![0; n])
    }

    /// The diagonal matrix `diag(ζ^{c_1}, …, ζ^{c_n})`.
    pub fn diagonal(r: u32, colors: Vec<u32>) -> Result<Self> {
        let n = colors.len();
        Self::new(r, (0..n).collect(), colors)
    }

    /// The scalar matrix `ζ_r^k I`.
    pub fn scalar(r: u32, n: usize, k: i64) -> Self {
        ColoredPermutation {
            r,
            perm: (0..n).collect(),
            colors: vec![mod_r(k, r); n],
        }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn color(&self, i: usize) -> u32 {
        self.colors[i]
    }

    /// `|g|` as an element of `G(r,n)` with zero colors.
    pub fn abs(&self) -> Self {
        ColoredPermutation {
            r: self.r,
            perm: self.perm.clone(),
            colors: vec![0; self.n()],
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.n() != other.n() {
            return Err(Error::Mismatch(format!(
                "G({},{}) vs G({},{})",
                self.r,
                self.n(),
                other.r,
                other.n()
            )));
        }
        Ok(())
    }

    /// `g ∘ h`: `|gh| = |g|∘|h|` and `z_i(gh) = z_i(h) + z_{|h|(i)}(g)`.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        self.check_compatible(h)?;
        Ok(self.compose_unchecked(h))
    }

    pub(crate) fn compose_unchecked(&self, h: &Self) -> Self {
        let r = self.r;
        let (perm, colors) = h
            .perm
            .iter()
            .zip(&h.colors)
            .map(|(&hi, &zh)| (self.perm[hi], (zh + self.colors[hi]) % r))
            .unzip();
        ColoredPermutation { r, perm, colors }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut colors = vec![0; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            colors[j] = (self.r - self.colors[i]) % self.r;
        }
        ColoredPermutation {
            r: self.r,
            perm,
            colors,
        }
    }

    /// Complex conjugate: same permutation, negated colors.
    pub fn bar(&self) -> Self {
        ColoredPermutation {
            r: self.r,
            perm: self.perm.clone(),
            colors: self.colors.iter().map(|&c| (self.r - c) % self.r).collect(),
        }
    }

    /// Matrix transpose: `|g^t| = |g|^{-1}` and `z_{|g|(i)}(g^t) = z_i(g)`.
    pub fn transpose(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut colors = vec![0; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            colors[j] = self.colors[i];
        }
        ColoredPermutation {
            r: self.r,
            perm,
            colors,
        }
    }

    /// `ζ_r^k · g`.
    pub fn scalar_mul(&self, k: i64) -> Self {
        let k = mod_r(k, self.r);
        ColoredPermutation {
            r: self.r,
            perm: self.perm.clone(),
            colors: self.colors.iter().map(|&c| (c + k) % self.r).collect(),
        }
    }

    /// `Σ z_i(g)` in `Z_r`.
    pub fn z_sum(&self) -> u32 {
        (self.colors.iter().map(|&c| c as u64).sum::<u64>() % self.r as u64) as u32
    }

    /// Membership in `G(r,p,n)`; `p` must divide `r`.
    pub fn is_member(&self, p: u32) -> bool {
        debug_assert!(p >= 1 && self.r % p == 0);
        self.z_sum() % p == 0
    }

    /// `Some(k)` when `g = ζ_r^k I`.
    pub fn scalar_exponent(&self) -> Option<u32> {
        let k = *self.colors.first().unwrap_or(&0);
        let is_scalar = self.perm.iter().enumerate().all(|(i, &j)| i == j)
            && self.colors.iter().all(|&c| c == k);
        is_scalar.then_some(k)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_exponent() == Some(0)
    }

    pub fn is_involution_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| self.perm[j] == i)
    }

    /// `ḡ ∘ g`, the matrix product `g·ḡ`.
    ///
    /// On an even colored cycle this splits it into the two cycles on odd and
    /// even positions with colors `z_1 - z_2, z_3 - z_4, …` and
    /// `z_2 - z_3, …, z_d - z_1`.
    pub fn absolute_square(&self) -> Self {
        self.bar().compose_unchecked(self)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_involution_perm()
            && (0..self.n()).all(|i| self.colors[self.perm[i]] == self.colors[i])
    }

    pub fn is_antisymmetric(&self) -> bool {
        if self.r % 2 != 0 || !self.is_involution_perm() {
            return false;
        }
        let half = self.r / 2;
        (0..self.n()).all(|i| self.colors[self.perm[i]] == (self.colors[i] + half) % self.r)
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        if self.is_symmetric() {
            SymmetryClass::Symmetric
        } else if self.is_antisymmetric() {
            SymmetryClass::Antisymmetric
        } else {
            SymmetryClass::Neither
        }
    }

    /// `σ g σ^{-1}` for the plain permutation `σ`, given as an image vector.
    ///
    /// Colors move along: `z_{σ(i)}(σgσ^{-1}) = z_i(g)`.
    pub fn conjugate_by_perm(&self, sigma: &[usize]) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut colors = vec![0; n];
        for i in 0..n {
            perm[sigma[i]] = sigma[self.perm[i]];
            colors[sigma[i]] = self.colors[i];
        }
        ColoredPermutation {
            r: self.r,
            perm,
            colors,
        }
    }

    /// Disjoint colored cycles, sorted by minimal support element, each
    /// starting at its minimum.
    pub fn cycles(&self) -> Vec<ColoredCycle> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut support = Vec::new();
            let mut colors = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                support.push(i);
                colors.push(self.colors[i]);
                i = self.perm[i];
            }
            out.push(ColoredCycle {
                r: self.r,
                support,
                colors,
            });
        }
        out
    }

    /// Rebuilds an element from disjoint cycles covering `{0,…,n-1}`.
    pub fn from_cycles(r: u32, n: usize, cycles: &[ColoredCycle]) -> Result<Self> {
        let mut perm = vec![usize::MAX; n];
        let mut colors = vec![0; n];
        for c in cycles {
            if c.r != r {
                return Err(Error::Mismatch(format!("cycle modulus {} vs {r}", c.r)));
            }
            let d = c.len();
            for j in 0..d {
                let i = c.support[j];
                if i >= n || perm[i] != usize::MAX {
                    return Err(Error::InvalidElement(format!(
                        "cycles do not partition [{n}]"
                    )));
                }
                perm[i] = c.support[(j + 1) % d];
                colors[i] = c.colors[j];
            }
        }
        if perm.contains(&usize::MAX) {
            return Err(Error::InvalidElement(format!(
                "cycles do not cover [{n}]"
            )));
        }
        Self::new(r, perm, colors)
    }

    /// Window notation `[(z1,v1),...,(zn,vn)]`: `i ↦ ζ_r^{z_i}·v_i`, 1-based.
    pub fn to_window(&self) -> String {
        let body: Vec<String> = (0..self.n())
            .map(|i| format!("({},{})", self.colors[i], self.perm[i] + 1))
            .collect();
        format!("[{}]", body.join(","))
    }

    pub fn parse_window(r: u32, text: &str) -> Result<Self> {
        static OUTER: OnceLock<Regex> = OnceLock::new();
        static PAIR: OnceLock<Regex> = OnceLock::new();
        let outer = OUTER.get_or_init(|| {
            Regex::new(r"^\s*\[\s*(\(\s*-?\d+\s*,\s*\d+\s*\)(\s*,\s*\(\s*-?\d+\s*,\s*\d+\s*\))*)?\s*\]\s*$")
                .expect("valid regex")
        });
        let pair = PAIR
            .get_or_init(|| Regex::new(r"\(\s*(-?\d+)\s*,\s*(\d+)\s*\)").expect("valid regex"));
        if !outer.is_match(text) {
            return Err(Error::Parse(format!("not window notation: {text:?}")));
        }
        let mut perm = Vec::new();
        let mut colors = Vec::new();
        for cap in pair.captures_iter(text) {
            let z: i64 = cap[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad color {}", &cap[1])))?;
            let v: usize = cap[2]
                .parse()
                .map_err(|_| Error::Parse(format!("bad image {}", &cap[2])))?;
            if v == 0 {
                return Err(Error::Parse("images are 1-based".into()));
            }
            colors.push(mod_r(z, r.max(1)));
            perm.push(v - 1);
        }
        Self::new(r, perm, colors)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_window())
    }
}

impl Serialize for ColoredPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_window())
    }
}

impl Mul for &ColoredPermutation {
    type Output = ColoredPermutation;
    fn mul(self, rhs: Self) -> ColoredPermutation {
        self.compose(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// A colored cycle `i_1 → ζ^{z_1} i_2 → … → ζ^{z_d} i_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredCycle {
    r: u32,
    support: Vec<usize>,
    colors: Vec<u32>,
}

/// `(i^z,…)` with 1-based support elements.
impl fmt::Display for ColoredCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .support
            .iter()
            .zip(&self.colors)
            .map(|(i, z)| format!("{}^{}", i + 1, z))
            .collect();
        write!(f, "({})", body.join(","))
    }
}

impl Serialize for ColoredCycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl ColoredCycle {
    pub fn new(r: u32, support: Vec<usize>, colors: Vec<u32>) -> Result<Self> {
        if support.is_empty() || support.len() != colors.len() {
            return Err(Error::InvalidElement("malformed colored cycle".into()));
        }
        let mut sorted = support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != support.len() {
            return Err(Error::InvalidElement("repeated cycle entry".into()));
        }
        Ok(ColoredCycle {
            r,
            support,
            colors: colors.into_iter().map(|c| c % r).collect(),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `z(c)`, the sum of the colors.
    pub fn color(&self) -> u32 {
        (self.colors.iter().map(|&c| c as u64).sum::<u64>() % self.r as u64) as u32
    }

    /// Rotated to start at its minimal element.
    pub fn normalized(&self) -> Self {
        let pos = (0..self.len())
            .min_by_key(|&j| self.support[j])
            .expect("nonempty");
        let mut support = self.support.clone();
        let mut colors = self.colors.clone();
        support.rotate_left(pos);
        colors.rotate_left(pos);
        ColoredCycle {
            r: self.r,
            support,
            colors,
        }
    }

    /// `c c̄` on the support of `c`: one cycle for odd length, two for even.
    /// Results are normalized.
    pub fn absolute_square(&self) -> Vec<ColoredCycle> {
        let d = self.len();
        let r = self.r;
        let diff = |j: usize| (self.colors[j % d] + r - self.colors[(j + 1) % d]) % r;
        let build = |positions: Vec<usize>| {
            ColoredCycle {
                r,
                support: positions.iter().map(|&j| self.support[j]).collect(),
                colors: positions.iter().map(|&j| diff(j)).collect(),
            }
            .normalized()
        };
        if d % 2 == 1 {
            vec![build((0..d).map(|t| (2 * t) % d).collect())]
        } else {
            let mut out = vec![
                build((0..d).step_by(2).collect()),
                build((1..d).step_by(2).collect()),
            ];
            out.sort();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Monomial matrix with exponents; row `i` has `ζ^{z_i}` in column `|g|(i)`.
    type Monomial = Vec<Vec<Option<u32>>>;

    fn matrix(g: &ColoredPermutation) -> Monomial {
        let n = g.n();
        let mut m = vec![vec![None; n]; n];
        for i in 0..n {
            m[i][g.image(i)] = Some(g.color(i));
        }
        m
    }

    fn mat_mul(a: &Monomial, b: &Monomial, r: u32) -> Monomial {
        let n = a.len();
        let mut out = vec![vec![None; n]; n];
        for i in 0..n {
            for k in 0..n {
                if let Some(x) = a[i][k] {
                    for j in 0..n {
                        if let Some(y) = b[k][j] {
                            assert!(out[i][j].is_none(), "monomial product");
                            out[i][j] = Some((x + y) % r);
                        }
                    }
                }
            }
        }
        out
    }

    fn mat_transpose(a: &Monomial) -> Monomial {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
    }

    pub(crate) fn random_element(rng: &mut ChaCha8Rng, r: u32, n: usize) -> ColoredPermutation {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let colors = (0..n).map(|_| rng.gen_range(0..r)).collect();
        ColoredPermutation::new(r, perm, colors).unwrap()
    }

    fn all_elements(r: u32, n: usize) -> Vec<ColoredPermutation> {
        let mut out = Vec::new();
        let perms = crate::group::all_permutations(n);
        for p in &perms {
            let total = (r as usize).pow(n as u32);
            for mut code in 0..total {
                let mut colors = vec![0; n];
                for slot in colors.iter_mut().rev() {
                    *slot = (code % r as usize) as u32;
                    code /= r as usize;
                }
                out.push(ColoredPermutation::new(r, p.clone(), colors).unwrap());
            }
        }
        out
    }

    fn g9() -> ColoredPermutation {
        ColoredPermutation::parse_window(
            3,
            "[(1,4),(2,2),(0,8),(2,1),(1,5),(0,7),(0,6),(2,9),(1,3)]",
        )
        .unwrap()
    }

    #[test]
    fn composition_matches_matrix_product_in_reverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let g = random_element(&mut rng, 4, 4);
            let h = random_element(&mut rng, 4, 4);
            // map composition g∘h is the matrix product h·g
            assert_eq!(matrix(&(&g * &h)), mat_mul(&matrix(&h), &matrix(&g), 4));
        }
    }

    #[test]
    fn two_swaps_in_g22() {
        let g = ColoredPermutation::new(2, vec![1, 0], vec![1, 0]).unwrap();
        let h = ColoredPermutation::new(2, vec![1, 0], vec![0, 1]).unwrap();
        let gh = &g * &h;
        let oracle = mat_mul(&matrix(&h), &matrix(&g), 2);
        assert_eq!(matrix(&gh), oracle);
        assert_eq!(gh, ColoredPermutation::identity(2, 2));
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = ColoredPermutation::identity(3, 4);
        for _ in 0..100 {
            let g = random_element(&mut rng, 3, 4);
            assert_eq!(&e * &g, g);
            assert_eq!(&g * &e, g);
        }
    }

    #[test]
    fn conjugation_color_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = random_element(&mut rng, 5, 5);
            let sigma = random_element(&mut rng, 1, 5).abs();
            let sigma = ColoredPermutation::from_perm(5, sigma.perm().to_vec()).unwrap();
            let conj = &(&sigma * &g) * &sigma.inverse();
            let sinv = sigma.inverse();
            for i in 0..5 {
                assert_eq!(conj.color(i), g.color(sinv.image(i)));
            }
            assert_eq!(conj, g.conjugate_by_perm(sigma.perm()));
        }
    }

    #[test]
    fn compose_rejects_mismatched_shapes() {
        let a = ColoredPermutation::identity(2, 3);
        assert!(a.compose(&ColoredPermutation::identity(3, 3)).is_err());
        assert!(a.compose(&ColoredPermutation::identity(2, 2)).is_err());
    }

    #[test]
    fn bar_examples() {
        let g = g9();
        assert_eq!(g.bar().colors(), &[2, 1, 0, 1, 2, 0, 0, 1, 2]);
        assert_eq!(g.bar().perm(), g.perm());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let h = random_element(&mut rng, 2, 5);
            assert_eq!(h.bar(), h);
        }
    }

    #[test]
    fn transpose_examples() {
        let g = ColoredPermutation::new(5, vec![1, 0], vec![2, 3]).unwrap();
        assert_eq!(matrix(&g.transpose()), mat_transpose(&matrix(&g)));
        assert_eq!(g.transpose().colors(), &[3, 2]);
        let d = ColoredPermutation::diagonal(4, vec![1, 2, 3]).unwrap();
        assert_eq!(d.transpose(), d);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let h = random_element(&mut rng, 6, 4);
            assert_eq!(h.transpose().transpose(), h);
            assert_eq!(matrix(&h.transpose()), mat_transpose(&matrix(&h)));
        }
    }

    #[test]
    fn scalar_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let g = random_element(&mut rng, 4, 2);
            assert_eq!(g.scalar_mul(0), g);
            assert_eq!(g.scalar_mul(2).scalar_mul(2), g);
            for k in 0..4 {
                assert_eq!(g.scalar_mul(k).z_sum(), (g.z_sum() + 2 * k as u32) % 4);
            }
        }
    }

    #[test]
    fn golden_cycles() {
        let cycles = g9().cycles();
        let supports: Vec<Vec<usize>> = cycles
            .iter()
            .map(|c| c.support().iter().map(|i| i + 1).collect())
            .collect();
        assert_eq!(
            supports,
            vec![vec![1, 4], vec![2], vec![3, 8, 9], vec![5], vec![6, 7]]
        );
        let colors: Vec<u32> = cycles.iter().map(ColoredCycle::color).collect();
        assert_eq!(colors, vec![0, 2, 0, 1, 0]);
        assert_eq!(g9().z_sum(), 0);
        assert!(g9().is_member(3));
    }

    #[test]
    fn simple_cycle_decompositions() {
        let e = ColoredPermutation::identity(4, 3);
        let cs = e.cycles();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.len() == 1 && c.color() == 0));
        let long = ColoredPermutation::new(3, vec![1, 2, 3, 4, 0], vec![1; 5]).unwrap();
        let cs = long.cycles();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].color(), 5 % 3);
    }

    #[test]
    fn cycles_round_trip_exhaustively() {
        for (r, n) in [(3, 3), (2, 4)] {
            for g in all_elements(r, n) {
                let back = ColoredPermutation::from_cycles(r, n, &g.cycles()).unwrap();
                assert_eq!(back, g);
            }
        }
    }

    #[test]
    fn membership() {
        assert!(ColoredPermutation::identity(6, 3).is_member(6));
        let sigma = ColoredPermutation::from_perm(6, vec![2, 0, 1]).unwrap();
        for p in [1, 2, 3, 6] {
            assert!(sigma.is_member(p));
        }
    }

    #[test]
    fn symmetry_classes() {
        let d = ColoredPermutation::diagonal(5, vec![1, 4]).unwrap();
        assert_eq!(d.symmetry_class(), SymmetryClass::Symmetric);
        let a = ColoredPermutation::new(4, vec![1, 0], vec![0, 2]).unwrap();
        assert_eq!(a.symmetry_class(), SymmetryClass::Antisymmetric);
        // matrix oracle: transpose equals −g
        let minus = a.scalar_mul(2);
        assert_eq!(mat_transpose(&matrix(&a)), matrix(&minus));
        for g in all_elements(3, 3) {
            assert_ne!(g.symmetry_class(), SymmetryClass::Antisymmetric);
        }
    }

    #[test]
    fn symmetry_agrees_with_matrix_transpose() {
        for (r, n) in [(2, 3), (4, 2), (3, 3), (6, 2)] {
            for g in all_elements(r, n) {
                let t = mat_transpose(&matrix(&g));
                let sym = t == matrix(&g);
                let anti = r % 2 == 0 && t == matrix(&g.scalar_mul(r as i64 / 2));
                let expected = if sym {
                    SymmetryClass::Symmetric
                } else if anti {
                    SymmetryClass::Antisymmetric
                } else {
                    SymmetryClass::Neither
                };
                assert_eq!(g.symmetry_class(), expected, "{g}");
            }
        }
    }

    #[test]
    fn absolute_square_examples() {
        for g in all_elements(3, 3) {
            if g.is_symmetric() {
                assert!(g.absolute_square().is_identity());
            }
        }
        let c = ColoredCycle::new(7, vec![0, 1], vec![2, 5]).unwrap();
        let sq = c.absolute_square();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].support(), &[0]);
        assert_eq!(sq[0].colors(), &[(2 + 7 - 5) % 7]);
        assert_eq!(sq[1].support(), &[1]);
        assert_eq!(sq[1].colors(), &[(5 + 7 - 2) % 7]);
    }

    #[test]
    fn absolute_square_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let g = random_element(&mut rng, 6, 5);
            assert_eq!(
                matrix(&g.absolute_square()),
                mat_mul(&matrix(&g), &matrix(&g.bar()), 6)
            );
        }
    }

    #[test]
    fn cycle_square_matches_direct_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let g = random_element(&mut rng, 4, 4);
            let mut expected: Vec<ColoredCycle> = g
                .cycles()
                .iter()
                .flat_map(ColoredCycle::absolute_square)
                .collect();
            expected.sort_by_key(|c| c.support()[0]);
            assert_eq!(g.absolute_square().cycles(), expected);
        }
    }

    #[test]
    fn window_round_trip_and_errors() {
        let g = g9();
        assert_eq!(ColoredPermutation::parse_window(3, &g.to_window()).unwrap(), g);
        assert!(ColoredPermutation::parse_window(3, "[(0,1),(0,1)]").is_err());
        assert!(ColoredPermutation::parse_window(3, "(0,1)").is_err());
        assert!(ColoredPermutation::parse_window(3, "[(0,0)]").is_err());
        assert_eq!(
            ColoredPermutation::parse_window(4, "[(-1,2),(5,1)]").unwrap().colors(),
            &[3, 1]
        );
    }

    fn arb_element(r: u32, n: usize) -> impl Strategy<Value = ColoredPermutation> {
        (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::collection::vec(0..r, n),
        )
            .prop_map(move |(perm, colors)| ColoredPermutation::new(r, perm, colors).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (ColoredPermutation, ColoredPermutation, ColoredPermutation)>
    {
        (1u32..=6, 1usize..=6).prop_flat_map(|(r, n)| (arb_element(r, n), arb_element(r, n), arb_element(r, n)))
    }

    proptest! {
        #[test]
        fn group_axioms((g, h, k) in arb_triple()) {
            prop_assert_eq!(&(&g * &h) * &k, &g * &(&h * &k));
            prop_assert!((&g * &g.inverse()).is_identity());
            prop_assert!((&g.inverse() * &g).is_identity());
        }

        #[test]
        fn bar_is_an_automorphism((g, h, _k) in arb_triple()) {
            prop_assert_eq!((&g * &h).bar(), &g.bar() * &h.bar());
            prop_assert_eq!(g.bar().bar(), g.clone());
        }

        #[test]
        fn transpose_reverses_products((g, h, _k) in arb_triple()) {
            prop_assert_eq!((&g * &h).transpose(), &h.transpose() * &g.transpose());
        }

        #[test]
        fn absolute_square_has_zero_color_sum((g, _h, _k) in arb_triple()) {
            prop_assert_eq!(g.absolute_square().z_sum(), 0);
        }
    }
}
