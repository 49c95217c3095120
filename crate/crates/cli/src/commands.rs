use lctkit::charp::{nu_poly, SparsePolynomial, DEFAULT_BFS_BUDGET};
use lctkit::degeneration::{degenerate_ideal, degeneration_order, Block, DegenerationInput, DegenerationOrder, LayerKind};
use lctkit::dp::{self, Classification, DpReport};
use lctkit::multiplicities::{self, GridConfig};
use lctkit::polytope::{integral_closure, mu};
use lctkit::rational::{parse_rational, to_fraction_string};
use lctkit::thresholds::{self, MonomialValuation, DEFAULT_STATE_BUDGET};
use lctkit::{Error, ExponentVector, MonomialIdeal, Rational};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::parse::{default_vars, format_ideal, parse_ideal, IdealSpec, ParseError, Parsed};
use crate::Options;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Parse(e) => json!({ "kind": "parse", "message": e.message, "position": e.position }),
            CliError::Usage(m) => json!({ "kind": "usage", "message": m }),
            CliError::Compute(e) => {
                let mut v = json!({ "kind": kind(e), "message": e.to_string() });
                if let Error::BudgetExceeded { budget, lower_bound } = e {
                    v["budget"] = json!(budget);
                    v["lower_bound"] = json!(lower_bound);
                }
                v
            }
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::ZeroIdeal => "zero_ideal",
        Error::UnitIdeal => "unit_ideal",
        Error::NotPrimary => "not_primary",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::Overflow => "overflow",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::NotStabilized(_) => "not_stabilized",
        Error::CharacteristicMismatch(..) => "characteristic_mismatch",
        Error::NotApplicable(_) => "not_applicable",
        Error::InvalidDegeneration(_) => "invalid_degeneration",
        Error::Postcondition(_) => "postcondition",
    }
}

type Out = Result<Value, CliError>;

pub fn rat(r: &Rational) -> Value {
    Value::String(to_fraction_string(r))
}

fn big(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

fn vars_of(opts: &Options) -> Option<Vec<String>> {
    opts.vars
        .as_ref()
        .map(|v| v.split(',').map(|s| s.trim().to_string()).collect())
}

fn parse(text: &str, opts: &Options) -> Result<IdealSpec, CliError> {
    let vars = vars_of(opts);
    Ok(parse_ideal(text, vars.as_deref(), opts.characteristic, opts.parametric)?)
}

fn input_json(text: &str, spec: &IdealSpec) -> Value {
    let mut v = json!({ "ideal": text, "vars": spec.vars });
    if spec.characteristic != 0 {
        v["char"] = json!(spec.characteristic);
    }
    if spec.parametric {
        v["parametric"] = json!(true);
    }
    v
}

fn monomial(text: &str, opts: &Options) -> Result<(MonomialIdeal, IdealSpec), CliError> {
    let spec = parse(text, opts)?;
    match &spec.ideal {
        Parsed::Monomial(m) => Ok((m.clone(), spec)),
        Parsed::Polynomial(_) => Err(Error::NotApplicable("this command needs a monomial ideal".into()).into()),
    }
}

fn config(opts: &Options) -> GridConfig {
    let mut c = GridConfig {
        jobs: opts.jobs.max(1),
        ..GridConfig::default()
    };
    if let Some(b) = opts.budget {
        c.max_states = b;
    }
    c
}

fn report(command: &str, input: Value, result: Value, certificates: Value) -> Value {
    json!({ "command": command, "input": input, "result": result, "certificates": certificates })
}

pub fn lct(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let c = thresholds::lct_monomial(&i)?;
    let m = mu(&i)?;
    Ok(report(
        "lct",
        input_json(text, &spec),
        rat(&c),
        json!({ "mu": rat(&m), "newton_generators": format_ideal(&i, &spec.vars) }),
    ))
}

fn need_char(opts: &Options) -> Result<u64, CliError> {
    if opts.characteristic == 0 {
        return Err(CliError::Usage("this command needs --char p".into()));
    }
    Ok(opts.characteristic)
}

fn as_polys(spec: &IdealSpec) -> Result<Vec<SparsePolynomial>, CliError> {
    match &spec.ideal {
        Parsed::Polynomial(p) => Ok(p.clone()),
        Parsed::Monomial(m) => Ok(m
            .gens()
            .iter()
            .map(|g| SparsePolynomial::monomial(spec.characteristic, g.clone()))
            .collect::<lctkit::Result<_>>()?),
    }
}

fn nu_value(spec: &IdealSpec, target: &MonomialIdeal, e: u32, opts: &Options) -> Result<u64, CliError> {
    let p = spec.characteristic;
    match &spec.ideal {
        Parsed::Monomial(i) => {
            let q = p.checked_pow(e).ok_or(Error::Overflow)?;
            Ok(thresholds::nu_monomial(i, target, q, opts.budget.unwrap_or(DEFAULT_STATE_BUDGET))?)
        }
        Parsed::Polynomial(_) => Ok(nu_poly(
            &as_polys(spec)?,
            target,
            p,
            e,
            opts.budget.unwrap_or(DEFAULT_BFS_BUDGET),
        )?),
    }
}

pub fn nu(text: &str, target: Option<&str>, opts: &Options) -> Out {
    let p = need_char(opts)?;
    let spec = parse(text, opts)?;
    let target_ideal = match target {
        None => MonomialIdeal::maximal(spec.dim()),
        Some(t) => {
            let t_spec = parse_ideal(t, Some(&spec.vars), 0, false)?;
            match t_spec.ideal {
                Parsed::Monomial(m) => m,
                Parsed::Polynomial(_) => return Err(CliError::Usage("--target must be a monomial ideal".into())),
            }
        }
    };
    let nu = nu_value(&spec, &target_ideal, opts.e, opts)?;
    let q = p.checked_pow(opts.e).ok_or(Error::Overflow)?;
    let mut input = input_json(text, &spec);
    input["e"] = json!(opts.e);
    input["target"] = json!(format_ideal(&target_ideal, &spec.vars));
    Ok(report(
        "nu",
        input,
        json!(nu),
        json!({ "q": q, "lower": rat(&Rational::new(nu.into(), q.into())) }),
    ))
}

pub fn fpt_bracket(text: &str, opts: &Options) -> Out {
    let p = need_char(opts)?;
    let spec = parse(text, opts)?;
    let m = MonomialIdeal::maximal(spec.dim());
    let g = match &spec.ideal {
        Parsed::Monomial(i) => i.num_gens(),
        Parsed::Polynomial(polys) => polys.len(),
    } as u64;
    let limit = match &spec.ideal {
        Parsed::Monomial(i) => Some(thresholds::lct_monomial(i)?),
        Parsed::Polynomial(_) => None,
    };
    let mut entries = Vec::new();
    let mut series = Vec::new();
    for e in 1..=opts.e {
        let q = p.checked_pow(e).ok_or(Error::Overflow)?;
        let nu = nu_value(&spec, &m, e, opts)?;
        series.push(nu);
        let lower = Rational::new(nu.into(), q.into());
        let upper = Rational::new((nu + g).into(), q.into());
        let mut entry = json!({ "e": e, "q": q, "nu": nu, "lower": rat(&lower), "upper": rat(&upper) });
        if let Some(c) = &limit {
            entry["contains_limit"] = json!(&lower <= c && c <= &upper);
        }
        entries.push(entry);
    }
    let monotone = series.windows(2).all(|w| w[1] >= p * w[0]);
    let mut input = input_json(text, &spec);
    input["e"] = json!(opts.e);
    Ok(report(
        "fpt-bracket",
        input,
        json!(entries),
        json!({ "generators": g, "monotone": monotone, "limit": limit.as_ref().map(rat) }),
    ))
}

pub fn closure(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let c = integral_closure(&i)?;
    Ok(report(
        "closure",
        input_json(text, &spec),
        json!(format_ideal(&c, &spec.vars)),
        json!({ "integrally_closed": c == i, "generators": c.num_gens() }),
    ))
}

pub fn mult(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let e = multiplicities::hilbert_samuel_with(&i, &config(opts))?;
    Ok(report(
        "mult",
        input_json(text, &spec),
        json!(e),
        json!({ "colength": i.length_quotient()? }),
    ))
}

pub fn mixed(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let e = multiplicities::mixed_multiplicities_with(&i, &config(opts))?;
    let opt: Vec<Option<u64>> = e.values().iter().map(|&v| Some(v)).collect();
    Ok(report(
        "mixed",
        input_json(text, &spec),
        json!(e.values()),
        json!({ "minkowski": multiplicities::minkowski_check(&opt) }),
    ))
}

pub fn sigma(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let j = opts.j.ok_or_else(|| CliError::Usage("sigma needs --j".into()))?;
    let s = multiplicities::sigma_with(&i, j, &config(opts))?;
    let mut input = input_json(text, &spec);
    input["j"] = json!(j);
    Ok(report(
        "sigma",
        input,
        s.map_or(json!("infinity"), |v| json!(v)),
        json!({ "codimension": i.codimension()? }),
    ))
}

fn l_of(i: &MonomialIdeal, opts: &Options) -> usize {
    opts.l.unwrap_or(i.dim())
}

fn dp_report_json(r: &DpReport) -> Value {
    json!({
        "l": r.l,
        "sigmas": r.sigmas,
        "e": rat(&r.e),
        "c": rat(&r.c),
        "slack": rat(&r.slack),
        "equality": r.equality,
    })
}

pub fn dp(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let l = l_of(&i, opts);
    let sigmas = multiplicities::sigma_vector(&i, l, &config(opts))?;
    let e = dp::dp_invariant_with(&i, l, &config(opts))?;
    let mut input = input_json(text, &spec);
    input["l"] = json!(l);
    Ok(report("dp", input, rat(&e), json!({ "sigmas": sigmas })))
}

pub fn check_bound(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let l = l_of(&i, opts);
    let r = dp::check_bound_with(&i, l, &config(opts))?;
    let mut input = input_json(text, &spec);
    input["l"] = json!(l);
    Ok(report(
        "check-bound",
        input,
        json!(r.slack >= Rational::from_integer(0.into())),
        dp_report_json(&r),
    ))
}

pub fn classify(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let l = l_of(&i, opts);
    let mut input = input_json(text, &spec);
    input["l"] = json!(l);
    let (result, certificates) = match dp::classify_equality_with(&i, l, &config(opts))? {
        Classification::NotApplicable(r) => (json!("not_applicable"), dp_report_json(&r)),
        Classification::NoMonomialWitness(r) => (json!("no_monomial_witness"), dp_report_json(&r)),
        Classification::Witness(w) => {
            let model = w.model(i.dim());
            (
                json!("witness"),
                json!({
                    "degrees": w.degrees,
                    "variables": w.permutation[..w.degrees.len()].iter().map(|&k| &spec.vars[k]).collect::<Vec<_>>(),
                    "model": format_ideal(&model, &spec.vars),
                    "closure": format_ideal(&integral_closure(&i)?, &spec.vars),
                }),
            )
        }
    };
    Ok(report("classify", input, result, certificates))
}

pub fn lojasiewicz(text: &str, opts: &Options) -> Out {
    let (i, spec) = monomial(text, opts)?;
    let l0 = thresholds::lojasiewicz_exponent(&i)?;
    let drops = if l0.is_some() {
        thresholds::lojasiewicz_drops(&i)?
            .iter()
            .map(|d| {
                json!({
                    "hyperplane": format!("{} = 0", spec.vars[d.coordinate]),
                    "c": rat(&d.c),
                    "c_restricted": rat(&d.c_restricted),
                    "bound": rat(&d.bound),
                    "holds": d.holds,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(report(
        "lojasiewicz",
        input_json(text, &spec),
        l0.map_or(Value::Null, |v| json!(v)),
        json!({ "drops": drops }),
    ))
}

fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("not a rational number: '{s}'")))
}

pub fn colon_check(n: usize, q: u64, t: u64, weights: Option<&str>, level: &str) -> Out {
    let vars = default_vars(n);
    let frob = MonomialIdeal::maximal(n).frobenius_power(q)?;
    let brute = thresholds::colon_by_enumeration(&frob, &MonomialIdeal::maximal_power(n, t))?;
    let formula = thresholds::colon_frobenius_maxideal(n, q, t)?;
    let mut result = json!({
        "maximal_power": {
            "brute_force": format_ideal(&brute, &vars),
            "formula": format_ideal(&formula, &vars),
            "agrees": brute == formula,
        }
    });
    let mut input = json!({ "n": n, "q": q, "t": t });
    if let Some(w) = weights {
        let ws = w.split(',').map(rational_arg).collect::<Result<Vec<_>, _>>()?;
        if ws.len() != n {
            return Err(CliError::Usage(format!("expected {n} weights, got {}", ws.len())));
        }
        let v = MonomialValuation::new(ws)?;
        let level_value = rational_arg(level)?;
        let vc = thresholds::valuation_colon(&v, q, &level_value)?;
        result["valuation"] = json!({
            "brute_force": format_ideal(&vc.brute_force, &vars),
            "formula": format_ideal(&vc.formula, &vars),
            "agrees": vc.agrees(),
        });
        input["weights"] = json!(w);
        input["level"] = json!(level);
    }
    let all = result.as_object().expect("object").values().all(|v| v["agrees"] == json!(true));
    Ok(report("colon-check", input, result, json!({ "all_agree": all })))
}

fn parse_vector(s: &str) -> Result<(usize, ExponentVector), CliError> {
    let (coords, class) = s
        .split_once('@')
        .ok_or_else(|| CliError::Usage(format!("vector '{s}' needs '@class'")))?;
    let class: usize = class
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad class in '{s}'")))?;
    let coords = coords
        .split(',')
        .map(|c| c.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad coordinates in '{s}'")))?;
    if class == 0 {
        return Err(CliError::Usage("classes are numbered from 1".into()));
    }
    Ok((class - 1, ExponentVector::new(coords)))
}

pub fn order_json(input: &DegenerationInput, order: &DegenerationOrder) -> Value {
    let layers: Vec<Value> = order
        .layers
        .iter()
        .map(|l| {
            let kind = match l.kind {
                LayerKind::Zeroth => json!("zeroth"),
                LayerKind::First => json!("first"),
                LayerKind::Refine { pivot } => json!({ "refine": pivot + 1 }),
            };
            json!({
                "kind": kind,
                "t": rat(&l.t),
                "coefficients": l.coeffs.iter().map(rat).collect::<Vec<_>>(),
                "active_classes": l.active().iter().map(|i| i + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    let values: Vec<Value> = input
        .classes
        .iter()
        .enumerate()
        .flat_map(|(i, class)| {
            class.iter().map(move |u| {
                json!({ "class": i + 1, "u": u.coords(), "lambda": big(&order.weight.eval(u.coords())) })
            })
        })
        .collect();
    json!({
        "m": order.m + 1,
        "lambda": order.weight.0.iter().map(big).collect::<Vec<_>>(),
        "lambda_at_pure_m": big(&order.weight.eval(input.pure(order.m).coords())),
        "layers": layers,
        "values": values,
    })
}

pub fn degenerate(degrees: &[u64], vectors: &[String], blocks: Option<&str>, opts: &Options) -> Out {
    match blocks {
        Some(text) => degenerate_blocks(text, opts),
        None => {
            if degrees.is_empty() {
                return Err(CliError::Usage("give --degrees with --vector, or --blocks".into()));
            }
            let mut classes = vec![Vec::new(); degrees.len()];
            for v in vectors {
                let (class, u) = parse_vector(v)?;
                if class >= degrees.len() {
                    return Err(CliError::Usage(format!("class {} out of range", class + 1)));
                }
                classes[class].push(u);
            }
            let input = DegenerationInput::new(degrees.to_vec(), classes);
            let order = degeneration_order(&input)?;
            Ok(report(
                "degenerate",
                json!({ "degrees": degrees, "vectors": vectors }),
                order_json(&input, &order),
                json!({ "postconditions": "verified" }),
            ))
        }
    }
}

fn degenerate_blocks(text: &str, opts: &Options) -> Out {
    let p = need_char(opts)?;
    let flat = text.replace(';', ",");
    let vars = match vars_of(opts) {
        Some(v) => v,
        None => parse_ideal(&flat, None, p, opts.parametric)?.vars,
    };
    let mut blocks = Vec::new();
    for part in text.split(';') {
        let spec = parse_ideal(part, Some(&vars), p, opts.parametric)?;
        let polys = as_polys(&spec)?;
        let degree = polys
            .first()
            .and_then(|f| f.support().next())
            .map(ExponentVector::degree)
            .ok_or_else(|| CliError::Usage("empty block".into()))?;
        blocks.push(Block { degree, polys });
    }
    let out = degenerate_ideal(&blocks)?;
    let forms: Vec<Vec<String>> = out
        .initial_forms
        .iter()
        .map(|b| b.iter().map(|h| h.display_with(&vars)).collect())
        .collect();
    Ok(report(
        "degenerate",
        json!({ "blocks": text, "vars": vars, "char": p }),
        json!({
            "order": order_json(&out.input, &out.order),
            "ring_weight": out.ring_weight.0.iter().map(big).collect::<Vec<_>>(),
            "initial_forms": forms,
        }),
        json!({ "postconditions": "verified" }),
    ))
}
