use serde_json::{json, Value};

use gelfand::analysis::{
    asr_count, classify, conjecture_check, involution_count_formula, pi21, split_statistics, verify_model,
};
use gelfand::group::{absolute_involutions, enumerate, Group};
use gelfand::model::fix::fix_table;
use gelfand::model::{character, Action, ModelSpace};
use gelfand::rsk::rs_projective;
use gelfand::tableaux::model_dimension;
use gelfand::{ColoredPermutation, Error, GroupParams, ProjectiveElement, Result};

/// The element used in the worked example for `G(3,9)`.
pub const G39_WINDOW: &str = "[(1,4),(2,2),(0,8),(2,1),(1,5),(0,7),(0,6),(2,9),(1,3)]";
pub const G39_EXPECTED: i64 = 54;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn enumerate_cmd(params: GroupParams, classes: bool, bound: u128) -> Result<Value> {
    let order = params.check_size(bound)?;
    if classes {
        let group = Group::new(params, bound)?;
        let (cls, _) = group.conjugacy_classes();
        let rows: Vec<Value> = cls.iter().map(|c| json!({"rep": c.representative, "size": c.size})).collect();
        Ok(json!({"group": params.as_array(), "order": order as u64, "classes": rows}))
    } else {
        let elements: Vec<String> = enumerate(params, bound)?.map(|e| e.lift().to_window()).collect();
        Ok(json!({"group": params.as_array(), "order": order as u64, "elements": elements}))
    }
}

pub fn involutions_cmd(params: GroupParams, bound: u128) -> Result<Value> {
    let list = absolute_involutions(params, bound)?;
    let formula = involution_count_formula(params).ok().map(|c| c as u64);
    Ok(json!({
        "group": params.as_array(),
        "count": list.len(),
        "formula": formula,
        "involutions": list,
    }))
}

pub fn classify_cmd(params: GroupParams) -> Value {
    to_value(&classify(params))
}

pub fn dimension_cmd(params: GroupParams) -> Value {
    json!({
        "group": params.as_array(),
        "dimension": model_dimension(params) as u64,
    })
}

pub fn character_cmd(params: GroupParams, action: Action, bound: u128) -> Result<Value> {
    let group = Group::new(params, bound)?;
    let (classes, _) = group.conjugacy_classes();
    let space = ModelSpace::new(params, bound)?;
    Ok(to_value(&character(&space, action, &group, &classes)?))
}

pub fn rsk_cmd(params: GroupParams, element: &str) -> Result<Value> {
    let g = ColoredPermutation::parse_window(params.r(), element)?;
    if g.n() != params.n() {
        return Err(Error::InvalidElement(format!("{g} has n = {}, expected {}", g.n(), params.n())));
    }
    let canon = ProjectiveElement::canonicalize(params, &g)?;
    let (p, q) = rs_projective(params, canon.lift())?;
    Ok(json!({
        "group": params.as_array(),
        "element": canon.lift(),
        "shape": p.representative.shape(),
        "p": p,
        "q": q,
    }))
}

pub fn verify_cmd(params: GroupParams, bound: u128, timings: bool) -> Result<Value> {
    let mut report = verify_model(params, bound)?;
    if !timings {
        report.timings.clear();
    }
    let passed = report.passed();
    let mut v = to_value(&report);
    v["passed"] = json!(passed);
    Ok(v)
}

pub fn conjecture_cmd(r: u32, p: u32, n: usize, bound: u128, timings: bool) -> Result<Value> {
    let mut report = conjecture_check(r, p, n, bound)?;
    if !timings {
        report.timings.clear();
    }
    let (unsplit, split, _) = split_statistics(report.group);
    let passed = report.passed();
    let mut v = to_value(&report);
    v["unsplit_orbits"] = json!(unsplit);
    v["split_orbits"] = json!(split);
    v["passed"] = json!(passed);
    Ok(v)
}

pub fn example_g39() -> Result<Value> {
    let g = ColoredPermutation::parse_window(3, G39_WINDOW)?;
    let cycles = g.cycles();
    let partitions = pi21(&g)?;
    let formula = asr_count(&g)? as i64;
    let trace = fix_table(&g, 1)?.character_value()?;
    let traced = trace.as_integer();
    let passed = formula == G39_EXPECTED && traced == Some(G39_EXPECTED);
    Ok(json!({
        "group": [3, 1, 1, 9],
        "element": g,
        "cycles": cycles,
        "partitions": partitions.len(),
        "formula": formula,
        "fix_trace": trace,
        "expected": G39_EXPECTED,
        "passed": passed,
    }))
}
