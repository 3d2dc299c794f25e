use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::counts::{asr_quotient_count, classify, SquareRootCounts};
use crate::cyclotomic::{Cyclotomic, UnitScalar};
use crate::error::{Error, Result};
use crate::group::{gcd_u32, ConjugacyClass, Group, GroupParams};
use crate::model::fix::fix_table;
use crate::model::{character, sym_asym_characters, Action, Character, ModelSpace};
use crate::report::{Check, VerificationReport};
use crate::tableaux::fer_classes;

/// Groups up to this order get an exhaustive homomorphism check.
pub const EXHAUSTIVE_HOMOMORPHISM_LIMIT: usize = 2000;
/// Random triples checked on larger groups.
pub const HOMOMORPHISM_SAMPLES: usize = 1000;
const SAMPLE_SEED: u64 = 0x6765_6c66_616e_64;

type Outcome = std::result::Result<String, (String, Option<String>)>;

/// `(1/|G|) Σ_classes |C| χ₁(C) conj(χ₂(C))`, exact.
pub fn inner_product(a: &Character, b: &Character) -> Result<Cyclotomic> {
    if a.group != b.group || a.classes.len() != b.classes.len() {
        return Err(Error::Mismatch(format!("characters of {} and {}", a.group, b.group)));
    }
    let r = a.group.r();
    let mut sum = Cyclotomic::zero(r);
    let mut order: i64 = 0;
    for (x, y) in a.classes.iter().zip(&b.classes) {
        if x.representative != y.representative {
            return Err(Error::Mismatch(format!(
                "class lists differ at {} vs {}",
                x.representative, y.representative
            )));
        }
        let term = x.value.checked_mul(&y.value.conj())?.checked_scale(x.size as i64)?;
        sum = sum.checked_add(&term)?;
        order += x.size as i64;
    }
    sum.exact_div_int(order)
}

/// Checks `ϱ(gh) = ϱ(g)ϱ(h)` on the basis: every pair for small groups,
/// seeded random triples otherwise.
pub fn homomorphism_check(space: &ModelSpace, action: Action, group: &Group) -> Result<Check> {
    let m = group.len();
    let dim = space.dimension();
    let outcome: Outcome = if m <= EXHAUSTIVE_HOMOMORPHISM_LIMIT {
        let rows: Vec<Vec<(usize, UnitScalar)>> = group
            .elements()
            .par_iter()
            .map(|g| space.action_row(action, g))
            .collect::<Result<_>>()?;
        let failure = (0..m).into_par_iter().find_map_first(|a| {
            for b in 0..m {
                let ab = group.mul(a, b);
                for v in 0..dim {
                    let (t1, s1) = rows[b][v];
                    let (t2, s2) = rows[a][t1];
                    if rows[ab][v] != (t2, s2 * s1) {
                        return Some((a, b, v));
                    }
                }
            }
            None
        });
        match failure {
            None => Ok(format!("exhaustive over {m}x{m} pairs on {dim} basis vectors")),
            Some((a, b, v)) => Err((
                format!("g={} h={} v={}", group.element(a), group.element(b), space.basis()[v]),
                Some(group.element(a).to_window()),
            )),
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mut bad = None;
        for _ in 0..HOMOMORPHISM_SAMPLES {
            let a = rng.gen_range(0..m);
            let b = rng.gen_range(0..m);
            let v = rng.gen_range(0..dim);
            let (g, h) = (group.element(a), group.element(b));
            let (t1, s1) = space.act(action, h, v)?;
            let (t2, s2) = space.act(action, g, t1)?;
            let direct = space.act(action, &(g * h), v)?;
            if direct != (t2, s2 * s1) {
                bad = Some((a, b, v));
                break;
            }
        }
        match bad {
            None => Ok(format!("{HOMOMORPHISM_SAMPLES} seeded random triples")),
            Some((a, b, v)) => Err((
                format!("g={} h={} v={}", group.element(a), group.element(b), space.basis()[v]),
                Some(group.element(a).to_window()),
            )),
        }
    };
    Ok(Check::from_outcome("homomorphism", outcome))
}

fn compare_per_class<F>(classes: &[ConjugacyClass], chi: &Character, what: &str, f: F) -> Outcome
where
    F: Fn(&ConjugacyClass) -> std::result::Result<i64, String> + Sync,
{
    let failure = classes.par_iter().zip(&chi.classes).find_map_first(|(c, v)| {
        let expected = match f(c) {
            Ok(x) => x,
            Err(e) => return Some((c.representative.to_window(), e)),
        };
        if v.value.as_integer() != Some(expected) {
            Some((
                c.representative.to_window(),
                format!("character {} but {what} {expected}", v.value),
            ))
        } else {
            None
        }
    });
    match failure {
        None => Ok(format!("{} classes agree with {what}", classes.len())),
        Some((w, detail)) => Err((detail, Some(w))),
    }
}

fn timed<T>(report: &mut VerificationReport, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    report.timings.insert(name.to_string(), start.elapsed().as_secs_f64());
    out
}

/// Runs the five model checks on `G(r,p,q,n)` with the main action.
pub fn verify_model(params: GroupParams, bound: u128) -> Result<VerificationReport> {
    let verdict = classify(params);
    let d = gcd_u32(params.p(), params.n() as u32);
    if !verdict.involutory || d > 2 {
        return Err(Error::Precondition(format!(
            "{params} ({}) has no explicit model here; GCD(p,n) must be 1 or 2",
            verdict.branch
        )));
    }
    let mut report = VerificationReport::new(params);
    let group = timed(&mut report, "enumerate", || Group::new(params, bound))?;
    let space = ModelSpace::new(params, bound)?;
    let (classes, _) = group.conjugacy_classes();
    let chi = timed(&mut report, "character", || character(&space, Action::Main, &group, &classes))?;

    let hom = timed(&mut report, "homomorphism", || homomorphism_check(&space, Action::Main, &group))?;
    report.push(hom);

    let dim = space.dimension() as u128;
    let expected = crate::tableaux::model_dimension(params);
    report.push(Check::from_outcome(
        "dimension",
        if dim == expected {
            Ok(format!("{dim} absolute involutions of the dual = model dimension"))
        } else {
            Err((format!("{dim} absolute involutions of the dual, model dimension {expected}"), None))
        },
    ));

    let roots = timed(&mut report, "square_root_count", || SquareRootCounts::scan(&group));
    report.push(Check::from_outcome(
        "square_root_count",
        compare_per_class(&classes, &chi, "square-root count", |c| {
            Ok(roots.get(&c.representative) as i64)
        }),
    ));

    let norm = inner_product(&chi, &chi)?;
    report.push(Check::from_outcome(
        "norm",
        if norm.as_integer() == Some(classes.len() as i64) {
            Ok(format!("<chi,chi> = {} classes", classes.len()))
        } else {
            Err((format!("<chi,chi> = {norm}, {} classes", classes.len()), None))
        },
    ));

    let closed = timed(&mut report, "closed_form", || {
        compare_per_class(&classes, &chi, "closed form", |c| {
            let g = &c.representative;
            let formula = asr_quotient_count(params, g).map_err(|e| e.to_string())? as i64;
            if params.q() == 1 {
                let traced = fix_table(g, params.p())
                    .and_then(|fix| fix.character_value())
                    .map_err(|e| e.to_string())?;
                if traced.as_integer() != Some(formula) {
                    return Err(format!("Fix(g) trace {traced} but closed form {formula}"));
                }
            }
            Ok(formula)
        })
    });
    report.push(Check::from_outcome("closed_form", closed));
    Ok(report)
}

/// Orbits of `C_p` on the shapes indexing irreducibles of `G(r,n)`: `(u, s)` =
/// (#trivial stabilizer, #stabilizer of order 2), and `Σ st/2` over the latter.
pub fn split_statistics(params: GroupParams) -> (usize, usize, u128) {
    let mut u = 0;
    let mut s = 0;
    let mut half = 0u128;
    for class in fer_classes(params.dual()) {
        match class.stabilizer_order {
            1 => u += 1,
            2 => {
                s += 1;
                half += class.representative.st_count() / 2;
            }
            _ => {}
        }
    }
    (u, s, half)
}

/// Necessary consequences of the conjectured split of the symmetric submodule of
/// the model of `G(r,p,n)`, for `GCD(p,n) = 2`.
pub fn conjecture_check(r: u32, p: u32, n: usize, bound: u128) -> Result<VerificationReport> {
    let params = GroupParams::reflection(r, p, n)?;
    let d = gcd_u32(p, n as u32);
    if d != 2 {
        return Err(Error::Precondition(format!(
            "the symmetric/antisymmetric split needs GCD(p,n) = 2, got {d}"
        )));
    }
    let mut report = VerificationReport::new(params);
    let group = Group::new(params, bound)?;
    let (classes, _) = group.conjugacy_classes();
    let space = ModelSpace::new(params, bound)?;
    let (sym, asym) = timed(&mut report, "characters", || {
        sym_asym_characters(&space, Action::Main, &group, &classes)
    })?;
    let (u, s, half_sum) = split_statistics(params);

    let expect = |name: &str, got: Cyclotomic, want: i64| -> Check {
        if got.as_integer() == Some(want) {
            Check::pass(name, format!("{got} (necessary condition)"))
        } else {
            Check::fail(name, format!("{got}, expected {want} (necessary condition)"), None)
        }
    };
    report.push(expect("sym_asym_orthogonal", inner_product(&sym, &asym)?, 0));
    report.push(expect("asym_norm", inner_product(&asym, &asym)?, s as i64));
    report.push(expect("sym_norm", inner_product(&sym, &sym)?, (u + s) as i64));
    let dim_asym = space.basis().iter().filter(|v| !v.is_symmetric()).count() as u128;
    report.push(if dim_asym == half_sum {
        Check::pass("asym_dimension", format!("{dim_asym} (necessary condition)"))
    } else {
        Check::fail(
            "asym_dimension",
            format!("{dim_asym}, expected {half_sum} (necessary condition)"),
            None,
        )
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_GROUP_SIZE;

    fn params(r: u32, p: u32, q: u32, n: usize) -> GroupParams {
        GroupParams::new(r, p, q, n).unwrap()
    }

    fn setup(pr: GroupParams) -> (Group, Vec<ConjugacyClass>, ModelSpace) {
        let g = Group::new(pr, DEFAULT_MAX_GROUP_SIZE).unwrap();
        let (c, _) = g.conjugacy_classes();
        let s = ModelSpace::new(pr, DEFAULT_MAX_GROUP_SIZE).unwrap();
        (g, c, s)
    }

    #[test]
    fn inner_products_in_b2() {
        let pr = params(2, 1, 1, 2);
        let (g, classes, space) = setup(pr);
        assert_eq!(classes.len(), 5);
        let triv = Character::trivial(pr, &classes);
        let chi = character(&space, Action::Modgrn, &g, &classes).unwrap();
        assert_eq!(inner_product(&triv, &triv).unwrap().as_integer(), Some(1));
        assert_eq!(inner_product(&chi, &chi).unwrap().as_integer(), Some(5));
        assert_eq!(inner_product(&chi, &triv).unwrap().as_integer(), Some(1));
    }

    #[test]
    fn verify_small_groups() {
        for pr in [params(2, 1, 1, 3), params(2, 2, 1, 4), params(6, 2, 1, 2), params(4, 2, 2, 2)] {
            let report = verify_model(pr, DEFAULT_MAX_GROUP_SIZE).unwrap();
            assert!(report.passed(), "{pr}: {:?}", report.failures().collect::<Vec<_>>());
            assert_eq!(report.checks.len(), 5);
        }
    }

    #[test]
    fn verify_refuses_exotic_and_non_involutory() {
        assert!(matches!(
            verify_model(params(4, 4, 4, 4), DEFAULT_MAX_GROUP_SIZE),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            verify_model(params(3, 3, 1, 3), DEFAULT_MAX_GROUP_SIZE),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conjecture_on_small_cases() {
        for (r, p, n) in [(2, 2, 4), (4, 2, 2)] {
            let report = conjecture_check(r, p, n, DEFAULT_MAX_GROUP_SIZE).unwrap();
            assert_eq!(report.checks.len(), 4);
            assert!(report.passed(), "{:?}", report.checks);
        }
        assert!(matches!(conjecture_check(3, 3, 3, 1000), Err(Error::Precondition(_))));
        assert!(matches!(conjecture_check(3, 1, 2, 1000), Err(Error::Precondition(_))));
    }
}
