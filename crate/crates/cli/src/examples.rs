//! Golden worked examples, recomputed and diffed against stored output.

use lctkit::charp::{imperfect_field_example, nu_poly, pos_char_example, SparsePolynomial, DEFAULT_BFS_BUDGET};
use lctkit::degeneration::{degeneration_order, DegenerationInput};
use lctkit::multiplicities::mixed_multiplicities;
use lctkit::polytope::{integral_closure, mu};
use lctkit::rational::from_u64;
use lctkit::thresholds::lct_monomial;
use lctkit::{ExponentVector, MonomialIdeal, Rational};
use serde_json::{json, Map, Value};

use crate::commands::{self, order_json, rat, CliError};
use crate::parse::default_vars;
use crate::Options;

const GOLDEN: &str = include_str!("../golden/paper_examples.json");

fn ideal(dim: usize, gens: &[&[u64]]) -> lctkit::Result<MonomialIdeal> {
    MonomialIdeal::from_exponents(dim, gens)
}

fn monomial_threshold() -> lctkit::Result<Value> {
    let i = ideal(2, &[&[6, 0], &[5, 1], &[3, 2], &[2, 3], &[1, 4], &[0, 6]])?;
    Ok(json!({ "lct": rat(&lct_monomial(&i)?), "mu": rat(&mu(&i)?) }))
}

fn pinched_polytope() -> lctkit::Result<Value> {
    let (a, b) = (3u64, 4u64);
    let c = ideal(3, &[&[a, 0, 0], &[1, 1, 0], &[0, a, 0], &[0, 0, b]])?;
    let big_a = c.sum(&ideal(3, &[&[a - 1, 0, 1]])?)?;
    let ec = mixed_multiplicities(&c)?;
    let ea = mixed_multiplicities(&big_a)?;
    let lct_a = lct_monomial(&big_a)?;
    let right = Rational::from_integer(1.into()) + from_u64(ea.get(2)) / from_u64(ea.top());
    Ok(json!({
        "a": a,
        "b": b,
        "lct_c": rat(&lct_monomial(&c)?),
        "lct_a": rat(&lct_a),
        "e_c": ec.top(),
        "e2_c": ec.get(2),
        "e2_a": ea.get(2),
        "e_a_below_e_c": ea.top() < ec.top(),
        "z_x_pow_a_minus_1_in_closure_c": integral_closure(&c)?.contains_monomial(&ExponentVector::new(vec![a - 1, 0, 1]))?,
        "lct_a_below_restricted_plus_ratio": lct_a < right,
    }))
}

fn series(make: fn(u64) -> lctkit::Result<SparsePolynomial>, e_max: u32) -> lctkit::Result<Value> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let f = make(p)?;
        let m = MonomialIdeal::maximal(2);
        let mut nus = Vec::new();
        let mut contains = true;
        for e in 1..=e_max {
            let nu = nu_poly(std::slice::from_ref(&f), &m, p, e, DEFAULT_BFS_BUDGET)?;
            let q = p.pow(e);
            let target = Rational::new(1.into(), p.into());
            contains &= Rational::new(nu.into(), q.into()) <= target && target <= Rational::new((nu + 1).into(), q.into());
            nus.push(nu);
        }
        out.push(json!({
            "p": p,
            "generator": f.display_with(&default_vars(2)),
            "nu": nus,
            "limit": format!("1/{p}"),
            "closed_brackets_contain_limit": contains,
        }));
    }
    Ok(Value::Array(out))
}

fn degeneration() -> Result<Value, CliError> {
    let v = |c: &[u64]| ExponentVector::new(c.to_vec());
    let input = DegenerationInput::new(
        vec![2, 3, 4, 5],
        vec![vec![], vec![v(&[1, 0, 0, 2])], vec![v(&[0, 2, 0, 2])], vec![]],
    );
    let order = degeneration_order(&input)?;
    let toy = commands::degenerate(
        &[],
        &[],
        Some("x^2; y^3 + x*y*z; z^7"),
        &Options {
            characteristic: 5,
            parametric: false,
            e: 1,
            l: None,
            j: None,
            budget: None,
            jobs: 1,
            vars: None,
            json: false,
            pretty: false,
        },
    )?;
    Ok(json!({
        "vectors": order_json(&input, &order),
        "toy_blocks": toy["result"].clone(),
    }))
}

fn computed() -> Result<Map<String, Value>, CliError> {
    let mut m = Map::new();
    m.insert("monomial_threshold".into(), monomial_threshold()?);
    m.insert("pinched_polytope".into(), pinched_polytope()?);
    m.insert("pos_char_failure".into(), series(pos_char_example, 4)?);
    m.insert("must_be_perfect".into(), series(imperfect_field_example, 3)?);
    m.insert("degeneration".into(), degeneration()?);
    Ok(m)
}

pub fn run() -> Result<Value, CliError> {
    let golden: Map<String, Value> = serde_json::from_str(GOLDEN).unwrap_or_default();
    let got = computed()?;
    let checks: Vec<Value> = got
        .iter()
        .map(|(name, value)| json!({ "name": name, "match": golden.get(name) == Some(value) }))
        .collect();
    let all = checks.iter().all(|c| c["match"] == json!(true)) && golden.len() == got.len();
    Ok(json!({
        "command": "paper-examples",
        "input": {},
        "result": { "checks": checks, "all_match": all },
        "certificates": { "computed": Value::Object(got) },
    }))
}
