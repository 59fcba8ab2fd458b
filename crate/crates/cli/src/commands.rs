//! One function per subcommand. Each fills a report; usage problems are
//! returned as errors and mathematical outcomes go into the report status.

use serde_json::{json, Value};

use dfan_core::fan::format_constraint;
use dfan_core::flatness::{
    check_simultaneous, format_w_monomial, kernel_normalize, monomial_filtration, FlatCertificate,
    IntersectionVerdict, MonomialIdeal, Truncation, WPoly,
};
use dfan_core::grammar::parse_monomial_ideal;
use dfan_core::rees::default_fiber_bound;
use dfan_core::standard_basis::default_l_max;
use dfan_core::weyl::Rational;
use dfan_core::{
    divide, fiber_v_zero_test, flat_decompose, member_n, standard_fan, AlgebraError, BasicCone,
    FanLimits, FiberVerdict, HomogenizedModule, Limits, LinearForm, Membership, OpVec, Operator,
    StandardBasis,
};
use num_traits::One;

use crate::problem::{parse_cone_text, parse_weight_text, ProblemFile};
use crate::report::{Report, Status};
use crate::{CliError, Command, Flags};

type Outcome = Result<Report, CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

/// Errors that reflect bad input become usage errors; the rest are
/// mathematical outcomes recorded in the report.
fn absorb(mut report: Report, e: AlgebraError) -> Outcome {
    let status = match &e {
        AlgebraError::Hypothesis(_)
        | AlgebraError::RelationFails
        | AlgebraError::Verification(_)
        | AlgebraError::Filtration(_) => Status::Negative,
        AlgebraError::Inconclusive(_) | AlgebraError::ResourceBound(_) => Status::Inconclusive,
        _ => return Err(usage(e.to_string())),
    };
    report.line(format!("error: {e}"));
    report.finish(status, json!({ "error": e.to_string() }));
    Ok(report)
}

macro_rules! attempt {
    ($report:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return absorb($report, err),
        }
    };
}

pub fn execute(command: Command, problem: &ProblemFile, flags: &Flags, input: &str) -> Outcome {
    let report = Report::new(command.name(), input, problem);
    match command {
        Command::Gb => gb(report, problem, flags),
        Command::Divide => divide_cmd(report, problem, flags),
        Command::Fan => fan(report, problem, flags),
        Command::Cones => cones(report, problem, flags),
        Command::Fiber => fiber(report, problem, flags),
        Command::FlatCert => flat_cert(report, problem, flags),
        Command::NormalizeSyzygy => normalize_syzygy(report, problem, flags),
        Command::MonomialChain => monomial_chain(report, problem, flags),
    }
}

fn reject(flags: &Flags, command: &str, allowed: &[&str]) -> Result<(), CliError> {
    let given = [
        ("weight", flags.weight.is_some()),
        ("cone", flags.cone.is_some()),
        ("ideal", flags.ideal.is_some()),
        ("degree-bound", flags.degree_bound.is_some()),
        ("l-max", flags.l_max.is_some()),
        ("expect", flags.expect.is_some()),
    ];
    for (name, set) in given {
        if set && !allowed.contains(&name) {
            return Err(usage(format!("--{name} does not apply to {command}")));
        }
    }
    Ok(())
}

fn expect_one_of<'a>(flags: &'a Flags, choices: &[&str]) -> Result<Option<&'a str>, CliError> {
    match flags.expect.as_deref() {
        None => Ok(None),
        Some(e) if choices.contains(&e) => Ok(Some(e)),
        Some(e) => Err(usage(format!(
            "--expect {e} is not one of {}",
            choices.join(", ")
        ))),
    }
}

fn module(problem: &ProblemFile) -> Result<HomogenizedModule, CliError> {
    if problem.generators.is_empty() {
        return Err(usage("the problem has no generators"));
    }
    HomogenizedModule::new(problem.generators.clone(), problem.shifts().clone())
        .map_err(|e| usage(e.to_string()))
}

fn engine_bounds(report: &mut Report) {
    let l = Limits::default();
    report.bound("max_basis", l.max_basis, true);
    report.bound("max_pairs", l.max_pairs, true);
    report.bound("max_degree_growth", l.max_degree_growth, true);
    report.bound("max_coefficient_bits", l.max_coefficient_bits, true);
}

fn weight(
    report: &mut Report,
    problem: &ProblemFile,
    flags: &Flags,
) -> Result<LinearForm, CliError> {
    let (l, default) = match (&flags.weight, &problem.weight) {
        (Some(t), _) => (
            parse_weight_text(t, problem.k()).map_err(|e| usage(format!("--weight: {e}")))?,
            false,
        ),
        (None, Some(l)) => (l.clone(), false),
        (None, None) => (
            LinearForm::from_i64(&vec![1; problem.k()]).expect("positive form"),
            true,
        ),
    };
    report.bound("weight", l.to_string(), default);
    Ok(l)
}

fn cone(problem: &ProblemFile, flags: &Flags) -> Result<Option<BasicCone>, CliError> {
    let rows = match (&flags.cone, &problem.cone) {
        (Some(t), _) => {
            parse_cone_text(t, problem.k()).map_err(|e| usage(format!("--cone: {e}")))?
        }
        (None, Some(rows)) => rows.clone(),
        (None, None) => return Ok(None),
    };
    BasicCone::new(rows)
        .map(Some)
        .map_err(|e| usage(e.to_string()))
}

fn ideal(problem: &ProblemFile, flags: &Flags) -> Result<Option<MonomialIdeal>, CliError> {
    match (&flags.ideal, &problem.ideal) {
        (Some(t), _) => parse_monomial_ideal(t, problem.k())
            .map(Some)
            .map_err(|e| usage(format!("--ideal: {e}"))),
        (None, h) => Ok(h.clone()),
    }
}

fn element_text(v: &OpVec) -> String {
    if v.rank() == 1 {
        v.component(0).to_string()
    } else {
        v.to_string()
    }
}

fn basis_json(basis: &StandardBasis) -> Value {
    let exps = basis.privileged_exponents();
    let ecarts = basis.ecarts();
    let orders = basis.orders();
    let elements: Vec<Value> = basis
        .elements()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let (comp, m) = &exps[i];
            let lead = OpVec::embed(
                Operator::monomial(h.n(), m.clone(), Rational::one()),
                h.rank(),
                *comp + 1,
            );
            json!({
                "element": element_text(h),
                "privileged_exponent": element_text(&lead),
                "ecart": ecarts[i],
                "order": orders[i].to_string(),
            })
        })
        .collect();
    Value::Array(elements)
}

fn gb(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "gb", &["weight"])?;
    let module = module(problem)?;
    let l = weight(&mut report, problem, flags)?;
    engine_bounds(&mut report);
    let basis = attempt!(report, module.standard_basis(&l));
    report.line(format!(
        "standard basis at L = {l}: {} element{}",
        basis.len(),
        if basis.len() == 1 { "" } else { "s" }
    ));
    let data = basis_json(&basis);
    for (i, e) in data.as_array().expect("array").iter().enumerate() {
        report.line(format!(
            "  H{} = {}   [privileged {}, ecart {}, order {}]",
            i + 1,
            e["element"].as_str().expect("string"),
            e["privileged_exponent"].as_str().expect("string"),
            e["ecart"],
            e["order"].as_str().expect("string"),
        ));
    }
    report.finish(
        Status::Ok,
        json!({ "weight": l.to_string(), "basis": data }),
    );
    Ok(report)
}

fn divide_cmd(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "divide", &["weight", "l-max", "expect"])?;
    let expect = expect_one_of(flags, &["member", "nonmember"])?;
    let module = module(problem)?;
    let q = problem
        .element
        .clone()
        .ok_or_else(|| usage("divide needs an 'element:' line"))?;
    let l = weight(&mut report, problem, flags)?;
    let l_max = flags.l_max.or(problem.l_max);
    let l_max_value = l_max.unwrap_or_else(|| default_l_max(&module, &q));
    report.bound("l_max", l_max_value, l_max.is_none());
    engine_bounds(&mut report);
    let basis = attempt!(report, module.standard_basis(&l));
    let hq = attempt!(report, q.homogenize());
    let result = attempt!(report, divide(&hq, &basis));
    attempt!(report, result.verify(&hq, &basis.elements(), basis.order()));
    report.line(format!("h(Q) = {}", element_text(&hq)));
    let quotients: Vec<String> = result.quotients.iter().map(|a| a.to_string()).collect();
    for (i, a) in quotients.iter().enumerate() {
        report.line(format!("  A{} = {a}", i + 1));
    }
    report.line(format!("  R = {}", element_text(&result.remainder)));
    let membership = attempt!(report, member_n(&q, &basis, l_max_value));
    let (member, l_found) = match membership {
        Membership::Yes(l) => {
            report.line(format!("membership: member (t^{l} h(Q) in h(N))"));
            (true, Some(l))
        }
        Membership::NoUpToBound(b) => {
            report.line(format!("membership: not a member (no l <= {b})"));
            (false, None)
        }
    };
    let status = match expect {
        Some("member") if !member => Status::Negative,
        Some("nonmember") if member => Status::Negative,
        _ => Status::Ok,
    };
    report.finish(
        status,
        json!({
            "weight": l.to_string(),
            "homogenized": element_text(&hq),
            "quotients": quotients,
            "remainder": element_text(&result.remainder),
            "member": member,
            "l": l_found,
        }),
    );
    Ok(report)
}

fn fan_bounds(report: &mut Report) {
    let f = FanLimits::default();
    report.bound("max_hyperplanes", f.max_hyperplanes, true);
    report.bound("max_rounds", f.max_rounds, true);
    engine_bounds(report);
}

fn constraints(cone: &dfan_core::FanCone) -> Vec<String> {
    cone.equalities()
        .iter()
        .map(|f| format_constraint(f, "="))
        .chain(
            cone.inequalities()
                .iter()
                .map(|f| format_constraint(f, ">")),
        )
        .collect()
}

fn fan(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "fan", &["expect"])?;
    let expect = match flags.expect.as_deref() {
        None => None,
        Some(t) => Some(
            t.parse::<usize>()
                .map_err(|_| usage("--expect for fan is the number of cones"))?,
        ),
    };
    let module = module(problem)?;
    fan_bounds(&mut report);
    let fan = attempt!(report, standard_fan(&module, FanLimits::default()));
    let count = fan.cones().len();
    let maximal = fan.maximal_cones().count();
    report.line(format!(
        "fan: {count} {} ({maximal} maximal)",
        if count == 1 { "cone" } else { "cones" }
    ));
    let mut cones = Vec::new();
    for (i, c) in fan.cones().iter().enumerate() {
        let cs = constraints(c);
        report.line(format!(
            "  cone {}: dim {}, sample {:?}, {}, basis of {}",
            i + 1,
            c.dimension(),
            c.sample(),
            if cs.is_empty() {
                "L >= 0".to_string()
            } else {
                cs.join(", ")
            },
            c.basis().len()
        ));
        for h in c.basis().elements() {
            report.line(format!("    {}", element_text(&h)));
        }
        cones.push(json!({
            "dimension": c.dimension(),
            "sample": c.sample(),
            "constraints": cs,
            "basis": basis_json(c.basis()),
        }));
    }
    let status = match expect {
        Some(e) if e != count => Status::Negative,
        _ => Status::Ok,
    };
    report.finish(
        status,
        json!({ "count": count, "maximal": maximal, "cones": cones }),
    );
    Ok(report)
}

fn cones(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "cones", &["weight", "cone", "expect"])?;
    let expect = expect_one_of(flags, &["inside", "outside"])?;
    let module = module(problem)?;
    let gamma = cone(problem, flags)?;
    if expect.is_some() && gamma.is_none() {
        return Err(usage("--expect for cones needs a cone"));
    }
    fan_bounds(&mut report);
    let fan = attempt!(report, standard_fan(&module, FanLimits::default()));
    let mut maximal = Vec::new();
    for (i, c) in fan.cones().iter().enumerate() {
        if c.dimension() == problem.k() {
            report.line(format!("maximal cone {}: sample {:?}", i + 1, c.sample()));
            maximal.push(
                json!({ "index": i + 1, "sample": c.sample(), "constraints": constraints(c) }),
            );
        }
    }
    let mut result = json!({ "maximal": maximal });
    if flags.weight.is_some() || problem.weight.is_some() {
        let l = weight(&mut report, problem, flags)?;
        let idx = attempt!(report, fan.index_of_weight(&l));
        report.line(format!("weight {l} lies in cone {}", idx + 1));
        result["weight_cone"] = json!(idx + 1);
    }
    let mut status = Status::Ok;
    if let Some(g) = gamma {
        let interior = attempt!(report, LinearForm::from_i64(&g.interior_weight()));
        let basis = attempt!(report, module.standard_basis(&interior));
        let inside = check_simultaneous(&basis, &g).is_ok();
        report.line(format!(
            "cone {:?}: {}",
            g.rows(),
            if inside {
                "inside one cone of the fan"
            } else {
                "meets more than one cone of the fan"
            }
        ));
        result["inside"] = json!(inside);
        status = match (expect, inside) {
            (Some("inside"), false) | (Some("outside"), true) => Status::Negative,
            _ => Status::Ok,
        };
    }
    report.finish(status, result);
    Ok(report)
}

fn fiber(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "fiber", &["degree-bound", "expect"])?;
    let expect = expect_one_of(flags, &["zero", "nonzero"])?;
    if problem.generators.is_empty() {
        return Err(usage("the problem has no generators"));
    }
    let bound = flags.degree_bound.or(problem.degree_bound);
    let b = bound.unwrap_or_else(|| default_fiber_bound(&problem.generators));
    report.bound("degree_bound", b, bound.is_none());
    let verdict = attempt!(
        report,
        fiber_v_zero_test(&problem.generators, problem.shifts(), Some(b))
    );
    let (status, result) = match &verdict {
        FiberVerdict::Zero { witnesses } => {
            report.line("fiber: zero");
            let w: Vec<String> = witnesses.iter().map(element_text).collect();
            for (i, q) in w.iter().enumerate() {
                report.line(format!(
                    "  witness for e{}: {q} lies in N and its exact-weight part is e{}",
                    i + 1,
                    i + 1
                ));
            }
            let s = if expect == Some("nonzero") {
                Status::Negative
            } else {
                Status::Ok
            };
            (s, json!({ "verdict": "zero", "witnesses": w }))
        }
        FiberVerdict::Nonzero {
            component,
            degree,
            form,
        } => {
            report.line("fiber: nonzero");
            report.line(format!(
                "  e{} is not in gr^L(N) for L = {form}, so its class in degree {degree:?} survives",
                component + 1
            ));
            let s = if expect == Some("zero") {
                Status::Negative
            } else {
                Status::Ok
            };
            (
                s,
                json!({
                    "verdict": "nonzero",
                    "component": component + 1,
                    "degree": degree,
                    "form": form.to_string(),
                }),
            )
        }
        FiberVerdict::Inconclusive { bound } => {
            report.line(format!("fiber: inconclusive at degree bound {bound}"));
            (
                Status::Inconclusive,
                json!({ "verdict": "inconclusive", "bound": bound }),
            )
        }
    };
    report.finish(status, result);
    Ok(report)
}

fn degrees_in_box(k: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn certificate_json(c: &FlatCertificate) -> Value {
    json!({
        "element": element_text(&c.element),
        "pieces": c.ideal.iter().zip(&c.pieces).map(|(j, p)| json!({
            "index": j + 1,
            "piece": element_text(p),
        })).collect::<Vec<_>>(),
        "l": c.trail.l,
        "direct": c.trail.direct.map(|i| c.ideal[i] + 1),
    })
}

fn flat_cert(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "flat-cert", &["cone", "ideal", "degree-bound"])?;
    let module = module(problem)?;
    let gamma = cone(problem, flags)?.ok_or_else(|| usage("flat-cert needs a cone"))?;
    let h = ideal(problem, flags)?.ok_or_else(|| usage("flat-cert needs an ideal"))?;
    let j = match h.as_coordinate() {
        Some(j) if !j.is_empty() => j,
        _ => {
            return Err(usage(format!(
                "{h} is not a nonzero proper coordinate ideal W_J"
            )))
        }
    };
    let bound = flags.degree_bound.or(problem.degree_bound);
    let b = bound.unwrap_or(4);
    report.bound("degree_bound", b, bound.is_none());
    let shift_max = problem
        .shifts()
        .columns()
        .iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);
    let degrees = match &problem.degree {
        Some(s) => vec![s.clone()],
        None => {
            let radius = i64::from(b) + shift_max + 1;
            report.bound(
                "degree_box",
                format!("[-{radius},{radius}]^{}", problem.k()),
                true,
            );
            degrees_in_box(problem.k(), radius)
        }
    };
    engine_bounds(&mut report);
    let interior = attempt!(report, LinearForm::from_i64(&gamma.interior_weight()));
    let basis = attempt!(report, module.standard_basis(&interior));
    attempt!(report, check_simultaneous(&basis, &gamma));
    let truncation = attempt!(report, Truncation::new(&module, b));
    report.bound("pieces_bound", truncation.pieces_bound(), true);
    report.line(format!(
        "cone {:?}, ideal {h}, truncation of dimension {}",
        gamma.rows(),
        truncation.dimension()
    ));
    let mut status = Status::Ok;
    let mut per_degree = Vec::new();
    let (mut total, mut certified) = (0usize, 0usize);
    for s in &degrees {
        let elements = attempt!(report, truncation.intersection(&gamma, s, &j));
        if elements.is_empty() {
            continue;
        }
        let verdict = attempt!(report, truncation.compare(&gamma, s, &h));
        let mut certs = Vec::new();
        let mut failures = Vec::new();
        for q in &elements {
            let checked = flat_decompose(q, s, &gamma, &j, &basis, None)
                .and_then(|c| c.verify(&basis).map(|_| c))
                .and_then(|c| c.replay(&basis).map(|_| c));
            match checked {
                Ok(c) => certs.push(certificate_json(&c)),
                Err(e) => {
                    status = status.and(match e {
                        AlgebraError::Inconclusive(_) | AlgebraError::ResourceBound(_) => {
                            Status::Inconclusive
                        }
                        _ => Status::Negative,
                    });
                    failures.push(json!({ "element": element_text(q), "error": e.to_string() }));
                }
            }
        }
        let oracle = match &verdict {
            IntersectionVerdict::Equal { .. } => json!({ "verdict": "equal" }),
            IntersectionVerdict::Counterexample {
                element,
                pieces_bound,
            } => {
                status = status.and(if failures.is_empty() {
                    Status::Negative
                } else {
                    Status::Inconclusive
                });
                json!({
                    "verdict": "counterexample",
                    "element": element_text(element),
                    "pieces_bound": pieces_bound,
                })
            }
        };
        total += elements.len();
        certified += certs.len();
        report.line(format!(
            "s = {s:?}: {} intersection element{}, {} certified, oracle {}",
            elements.len(),
            if elements.len() == 1 { "" } else { "s" },
            certs.len(),
            oracle["verdict"].as_str().expect("string")
        ));
        for f in &failures {
            report.line(format!(
                "  failed: {} ({})",
                f["element"].as_str().expect("string"),
                f["error"].as_str().expect("string")
            ));
        }
        per_degree.push(json!({
            "degree": s,
            "dimension": elements.len(),
            "oracle": oracle,
            "certificates": certs,
            "failures": failures,
        }));
    }
    report.line(format!("certified {certified} of {total} elements"));
    report.finish(
        status,
        json!({
            "cone": gamma.rows(),
            "ideal": h.to_string(),
            "elements": total,
            "certified": certified,
            "degrees": per_degree,
        }),
    );
    Ok(report)
}

fn normalize_syzygy(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "normalize-syzygy", &[])?;
    if problem.relations.is_empty() {
        return Err(usage("normalize-syzygy needs 'rel' lines"));
    }
    let exponents: Vec<Vec<u32>> = problem.relations.iter().map(|(a, _)| a.clone()).collect();
    let ops: Vec<WPoly> = problem.relations.iter().map(|(_, q)| q.clone()).collect();
    let out = attempt!(report, kernel_normalize(&exponents, &ops));
    let mut entries = Vec::new();
    for (i, row) in out.r.iter().enumerate() {
        for (p, r) in row.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            report.line(format!("R[{}][{}] = {r}", i + 1, p + 1));
            entries.push(json!({ "i": i + 1, "p": p + 1, "value": r.to_text() }));
        }
    }
    report.line(format!(
        "reconstruction and all {} identities verified",
        exponents.len()
    ));
    report.finish(
        Status::Ok,
        json!({
            "exponents": exponents.iter().map(|a| format_w_monomial(a)).collect::<Vec<_>>(),
            "entries": entries,
        }),
    );
    Ok(report)
}

/// `dim_e C[W]/W_J`: monomials of degree `e` in the `k - |J|` free variables.
fn coordinate_quotient_dim(k: usize, j: usize, e: i64) -> u64 {
    if e < 0 {
        return 0;
    }
    let free = (k - j) as u64;
    if free == 0 {
        return u64::from(e == 0);
    }
    // binomial(e + free - 1, free - 1)
    let e = e as u64;
    (1..free).fold(1u64, |acc, i| acc * (e + i) / i)
}

fn monomial_chain(mut report: Report, problem: &ProblemFile, flags: &Flags) -> Outcome {
    reject(flags, "monomial-chain", &["ideal", "degree-bound"])?;
    let h = ideal(problem, flags)?.ok_or_else(|| usage("monomial-chain needs an ideal"))?;
    let bound = flags.degree_bound.or(problem.degree_bound);
    let top = bound.unwrap_or(6);
    report.bound("degree_bound", top, bound.is_none());
    let chain = monomial_filtration(&h);
    attempt!(report, chain.validate());
    report.line(format!("H = {h}"));
    let ideals = chain.ideals();
    let mut steps = Vec::new();
    for (i, step) in chain.steps.iter().enumerate() {
        let wj = MonomialIdeal::coordinate(h.k(), &step.coordinates).expect("indices below k");
        report.line(format!(
            "  step {}: add {}, ({} : {}) = {}",
            i + 1,
            format_w_monomial(&step.monomial),
            ideals[i],
            format_w_monomial(&step.monomial),
            wj
        ));
        steps.push(json!({
            "monomial": format_w_monomial(&step.monomial),
            "colon": wj.to_string(),
        }));
    }
    let mut dims = Vec::new();
    let mut status = Status::Ok;
    for d in 0..=top {
        let direct = h.standard_count(d) as u64;
        let from_chain: u64 = chain
            .steps
            .iter()
            .map(|s| {
                let shift: u32 = s.monomial.iter().sum();
                coordinate_quotient_dim(h.k(), s.coordinates.len(), i64::from(d) - i64::from(shift))
            })
            .sum();
        if direct != from_chain {
            status = Status::Negative;
        }
        dims.push(json!({ "degree": d, "quotient": direct, "chain": from_chain }));
        report.line(format!(
            "  degree {d}: dim (C[W]/H)_d = {direct}, from the chain {from_chain}"
        ));
    }
    report.finish(
        status,
        json!({ "ideal": h.to_string(), "steps": steps, "dimensions": dims }),
    );
    Ok(report)
}
