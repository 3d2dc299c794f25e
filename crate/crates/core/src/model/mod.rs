//! Gelfand models on absolute involutions and their characters.

pub mod fix;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{sum_units, Cyclotomic, UnitScalar};
use crate::error::{Error, Result};
use crate::group::{absolute_involutions, ConjugacyClass, Group, GroupParams};
use crate::perm::ColoredPermutation;

/// Which explicit action to use on the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// `C_v ↦ ±C_{g v g^t}`, defined on `G(r,n)` only.
    Apr,
    /// `C_v ↦ ζ^{⟨g,v⟩}(-1)^{inv} C_{|g|v|g|^{-1}}`, all basis vectors symmetric.
    Modgrn,
    /// The general action, with the `u(g,v)` correction on antisymmetric vectors.
    Main,
}

impl FromStr for Action {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apr" => Ok(Action::Apr),
            "modgrn" => Ok(Action::Modgrn),
            "main" => Ok(Action::Main),
            other => Err(Error::Parse(format!("unknown action {other:?}"))),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Apr => "apr",
            Action::Modgrn => "modgrn",
            Action::Main => "main",
        })
    }
}

/// `|Inv(|g|) ∩ Pair(|v|)|`.
pub fn inv_pair_count(g: &ColoredPermutation, v: &ColoredPermutation) -> usize {
    (0..v.n())
        .filter(|&i| {
            let j = v.image(i);
            j > i && g.image(j) < g.image(i)
        })
        .count()
}

/// `⟨g,v⟩ = Σ z_i(g) z_i(v)` in `Z_r`.
pub fn color_dot(g: &ColoredPermutation, v: &ColoredPermutation) -> u32 {
    let r = g.r() as u64;
    let s: u64 = g
        .colors()
        .iter()
        .zip(v.colors())
        .map(|(&a, &b)| (a as u64 * b as u64) % r)
        .sum();
    (s % r) as u32
}

/// `u(g,v) = z_1(v) - z_{|g|^{-1}(1)}(v)`; independent of the lift of `v`.
pub fn u_shift(g: &ColoredPermutation, v: &ColoredPermutation) -> u32 {
    let r = g.r();
    let pre = g.perm().iter().position(|&j| j == 0).expect("permutation");
    (v.color(0) + r - v.color(pre)) % r
}

/// Fixed points `i` of `|v|` with `z_i(v) = 2k+1`, `k < r/2`, and
/// `k + z_i(g) mod r ≥ r/2`. Only defined for even `r`.
pub fn b_set(g: &ColoredPermutation, v: &ColoredPermutation) -> Result<Vec<usize>> {
    let r = g.r();
    if r % 2 != 0 {
        return Err(Error::Precondition(format!("B(g,v) needs even r, got {r}")));
    }
    Ok((0..v.n())
        .filter(|&i| {
            let z = v.color(i);
            if v.image(i) != i || z % 2 == 0 {
                return false;
            }
            let k = (z - 1) / 2;
            (k + g.color(i)) % r >= r / 2
        })
        .collect())
}

/// `(g v g^t, (-1)^{inv_v(g)} (-1)^{#B(g,v)})`, the sign of `B` only for even `r`.
pub fn act_apr(g: &ColoredPermutation, v: &ColoredPermutation) -> (ColoredPermutation, UnitScalar) {
    let r = g.r();
    let target = g.compose_unchecked(v).compose_unchecked(&g.transpose());
    let mut flips = inv_pair_count(g, v);
    if r % 2 == 0 {
        flips += b_set(g, v).expect("even r").len();
    }
    (target, UnitScalar::sign(r, flips))
}

/// `(|g| v |g|^{-1}, ζ^{⟨g,v⟩} (-1)^{inv_v(g)})`.
pub fn act_modgrn(g: &ColoredPermutation, v: &ColoredPermutation) -> (ColoredPermutation, UnitScalar) {
    let r = g.r();
    let target = v.conjugate_by_perm(g.perm());
    let scalar = UnitScalar::new(r, inv_pair_count(g, v) % 2 == 1, color_dot(g, v) as i64);
    (target, scalar)
}

/// The scalar `φ_g(w)`: as in [`act_modgrn`] for symmetric `w`, and
/// `ζ^{⟨g,w⟩ + u(g,w)}` for antisymmetric `w`.
pub fn phi(g: &ColoredPermutation, w: &ColoredPermutation) -> Result<UnitScalar> {
    let r = g.r();
    if w.is_symmetric() {
        Ok(UnitScalar::new(r, inv_pair_count(g, w) % 2 == 1, color_dot(g, w) as i64))
    } else if w.is_antisymmetric() {
        Ok(UnitScalar::zeta(r, color_dot(g, w) as i64 + u_shift(g, w) as i64))
    } else {
        Err(Error::Precondition(format!(
            "{w} is neither symmetric nor antisymmetric"
        )))
    }
}

/// `(|g| v |g|^{-1}, φ_g(v))` on a lift `v`.
pub fn act_main(g: &ColoredPermutation, v: &ColoredPermutation) -> Result<(ColoredPermutation, UnitScalar)> {
    let scalar = phi(g, v)?;
    Ok((v.conjugate_by_perm(g.perm()), scalar))
}

/// The space spanned by `I(r,q,p,n)`, acted on by `G(r,p,q,n)`.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    group: GroupParams,
    basis: Vec<ColoredPermutation>,
}

impl ModelSpace {
    pub fn new(group: GroupParams, bound: u128) -> Result<Self> {
        let basis = absolute_involutions(group.dual(), bound)?;
        Ok(ModelSpace { group, basis })
    }

    pub fn group(&self) -> GroupParams {
        self.group
    }

    pub fn basis(&self) -> &[ColoredPermutation] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis index of the class of `v` in the dual group.
    pub fn index_of(&self, v: &ColoredPermutation) -> Option<usize> {
        let canon = self.group.dual().canonical_lift(v);
        self.basis.binary_search(&canon).ok()
    }

    fn check_action(&self, action: Action) -> Result<()> {
        let g = self.group;
        match action {
            Action::Apr if g.p() != 1 || g.q() != 1 => Err(Error::Precondition(format!(
                "the transpose action is defined on G(r,n) only, not {g}"
            ))),
            Action::Modgrn if g.p() != 1 => Err(Error::Precondition(format!(
                "the modgrn action needs p = 1, not {g}"
            ))),
            _ => Ok(()),
        }
    }

    /// Image of basis vector `idx` under `g` (any lift in `G(r,p,n)`).
    pub fn act(&self, action: Action, g: &ColoredPermutation, idx: usize) -> Result<(usize, UnitScalar)> {
        self.check_action(action)?;
        self.act_unchecked(action, g, idx)
    }

    fn act_unchecked(&self, action: Action, g: &ColoredPermutation, idx: usize) -> Result<(usize, UnitScalar)> {
        let v = &self.basis[idx];
        let (target, scalar) = match action {
            Action::Apr => act_apr(g, v),
            Action::Modgrn => act_modgrn(g, v),
            Action::Main => act_main(g, v)?,
        };
        let t = self.index_of(&target).ok_or_else(|| {
            Error::Precondition(format!("{v} is sent outside the basis by {g}"))
        })?;
        Ok((t, scalar))
    }

    /// The full permutation-with-scalars matrix of `g`.
    pub fn action_row(&self, action: Action, g: &ColoredPermutation) -> Result<Vec<(usize, UnitScalar)>> {
        self.check_action(action)?;
        (0..self.basis.len())
            .map(|i| self.act_unchecked(action, g, i))
            .collect()
    }

    /// Trace of `g` restricted to the basis vectors selected by `keep`.
    pub fn trace_where<F>(&self, action: Action, g: &ColoredPermutation, keep: F) -> Result<Cyclotomic>
    where
        F: Fn(&ColoredPermutation) -> bool,
    {
        self.check_action(action)?;
        let mut units = Vec::new();
        for (i, v) in self.basis.iter().enumerate() {
            if !keep(v) {
                continue;
            }
            let (t, s) = self.act_unchecked(action, g, i)?;
            if t == i {
                units.push(s);
            }
        }
        Ok(sum_units(self.group.r(), &units))
    }

    pub fn trace(&self, action: Action, g: &ColoredPermutation) -> Result<Cyclotomic> {
        self.trace_where(action, g, |_| true)
    }
}

/// Value of a class function on one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    #[serde(rename = "rep")]
    pub representative: ColoredPermutation,
    pub size: usize,
    pub value: Cyclotomic,
}

/// A class function with exact values, one entry per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    #[serde(serialize_with = "crate::group::params_as_array")]
    pub group: GroupParams,
    pub classes: Vec<ClassValue>,
}

impl Character {
    /// Builds a character by evaluating `f` on every class representative, in parallel.
    pub fn from_fn<F>(group: GroupParams, classes: &[ConjugacyClass], f: F) -> Result<Self>
    where
        F: Fn(&ColoredPermutation) -> Result<Cyclotomic> + Sync,
    {
        let values = classes
            .par_iter()
            .map(|c| {
                Ok(ClassValue {
                    representative: c.representative.clone(),
                    size: c.size,
                    value: f(&c.representative)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Character {
            group,
            classes: values,
        })
    }

    pub fn trivial(group: GroupParams, classes: &[ConjugacyClass]) -> Self {
        Self::from_fn(group, classes, |_| Ok(Cyclotomic::one(group.r()))).expect("infallible")
    }

    pub fn value_at_identity(&self) -> Option<&Cyclotomic> {
        self.classes
            .iter()
            .find(|c| c.representative.is_identity())
            .map(|c| &c.value)
    }
}

/// The character of `action` on `space`, one value per conjugacy class of `group`.
pub fn character(space: &ModelSpace, action: Action, group: &Group, classes: &[ConjugacyClass]) -> Result<Character> {
    if group.params() != space.group() {
        return Err(Error::Mismatch(format!("{} vs {}", group.params(), space.group())));
    }
    space.check_action(action)?;
    Character::from_fn(space.group(), classes, |g| space.trace(action, g))
}

/// Characters of the symmetric and antisymmetric blocks of the basis.
pub fn sym_asym_characters(
    space: &ModelSpace,
    action: Action,
    group: &Group,
    classes: &[ConjugacyClass],
) -> Result<(Character, Character)> {
    if group.params() != space.group() {
        return Err(Error::Mismatch(format!("{} vs {}", group.params(), space.group())));
    }
    // Each block must be stable under the generators.
    for s in Group::generators(space.group()) {
        for (i, v) in space.basis().iter().enumerate() {
            let (t, _) = space.act(action, &s, i)?;
            if space.basis()[t].is_symmetric() != v.is_symmetric() {
                return Err(Error::Precondition(format!(
                    "{s} moves {v} across the symmetric/antisymmetric split"
                )));
            }
        }
    }
    let sym = Character::from_fn(space.group(), classes, |g| {
        space.trace_where(action, g, ColoredPermutation::is_symmetric)
    })?;
    let asym = Character::from_fn(space.group(), classes, |g| {
        space.trace_where(action, g, |v| !v.is_symmetric())
    })?;
    Ok((sym, asym))
}
