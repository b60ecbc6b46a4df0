use crate::args::*;
use crate::report::{Report, Status};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_eisenstein::eisenstein::{
    depleted_formal, eis_moments_formal, eis_moments_rational, katz_comparison, reduce_table, tate_katz_moments,
    zeta_expected, padic_zeta_value_with_degree, MomentTable,
};
use padic_eisenstein::exec::Executor;
use padic_eisenstein::formal::WeierstrassData;
use padic_eisenstein::fourier::{
    certifiable_precision, finite_level_transform, level_compatibility_check, AmiceMeasure, Direction, FiniteLevelData,
    Side,
};
use padic_eisenstein::mahler::{amice_tail_bound, mahler_coeffs, SampledFunction};
use padic_eisenstein::rings::{is_prime, parse_rational, PAdicRing, PAdicScalar, Ring};
use padic_eisenstein::series::TruncSeries;
use padic_eisenstein::verify::{parse_suites, run_suites};
use padic_eisenstein::Error;
use serde_json::{json, Value};
use std::fmt::Write as _;

pub enum CliError {
    /// Bad request: exit code 2.
    Usage(String),
    /// The library refused or failed: exit code 1.
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::NotPrime(_) | Error::ModulusTooLarge { .. } | Error::Parse(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

type Outcome = Result<(Report, Output), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn padic_ring(p: u64, prec: u32) -> Result<PAdicRing, CliError> {
    if !is_prime(p) {
        return Err(usage(format!("--p {p} is not prime")));
    }
    if prec < 1 {
        return Err(usage("--prec must be at least 1"));
    }
    Ok(PAdicRing::new(p, prec)?)
}

/// p > 3 and p ∤ n, as every Eisenstein entry point requires.
fn eisenstein_prime(p: u64, n: i64) -> Result<(), CliError> {
    if p <= 3 {
        return Err(usage(format!("--p {p}: Eisenstein computations need p > 3")));
    }
    if n.unsigned_abs().is_multiple_of(p) {
        return Err(usage(format!("--n {n} must be prime to --p {p}")));
    }
    Ok(())
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let io = |e: csv::Error| CliError::Runtime(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

fn padic_text(x: &PAdicScalar) -> String {
    format!("{} + O({}^{})", x.value(), x.p(), x.prec())
}

fn padic_json(x: &PAdicScalar) -> Value {
    json!({ "value": x.value().to_string(), "precision": x.prec() })
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Amice(AmiceCommand::Transform(a)) => amice_transform(a),
        Command::Amice(AmiceCommand::Invert(a)) => amice_invert(a),
        Command::Eis(EisCommand::XDepleted { curve, deg, output }) => x_depleted(curve, deg, output),
        Command::Eis(EisCommand::Moments { curve, kmax, mode, output }) => eis_moments(curve, kmax, mode, output),
        Command::Tate(TateCommand::Moments { p, prec, n, kmax, qorder, output }) => tate_moments(p, prec, n, kmax, qorder, output),
        Command::Zeta(a) => zeta(a),
        Command::Cartier(CartierCommand::Transform { p, level, prec, direction, values, output }) => {
            cartier_transform(p, level, prec, direction, values, output)
        }
        Command::Cartier(CartierCommand::Check { p, level, prec, trials, seed, output }) => {
            cartier_check(p, level, prec, trials, seed, output)
        }
        Command::Verify(a) => verify(a),
    }
}

fn parse_measure(ring: &PAdicRing, arg: &str, deg: i64) -> Result<AmiceMeasure<PAdicRing>, CliError> {
    let p = ring.p();
    if let Some(a) = arg.strip_prefix("dirac:") {
        let a: BigInt = a.trim().parse().map_err(|_| usage(format!("--measure {arg}: not an integer")))?;
        return Ok(AmiceMeasure::dirac(ring, p, &a, deg)?);
    }
    if let Some(list) = arg.strip_prefix("series:") {
        let coeffs = list.split(',').map(|c| ring.parse(c)).collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() as i64 > deg {
            return Err(usage(format!("{} coefficients exceed --deg {deg}", coeffs.len())));
        }
        let terms = coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c));
        return Ok(AmiceMeasure::new(p, TruncSeries::from_terms(ring, terms, deg), 0)?);
    }
    Err(usage(format!("--measure {arg}: expected dirac:A or series:b0,b1,...")))
}

fn amice_transform(a: AmiceTransformArgs) -> Outcome {
    let ring = padic_ring(a.p, a.prec)?;
    if a.deg < 1 {
        return Err(usage("--deg must be positive"));
    }
    let mu = parse_measure(&ring, &a.measure, a.deg)?;
    let mut report = Report::new(
        "amice transform",
        json!({"p": a.p, "prec": a.prec, "deg": a.deg, "measure": a.measure, "kmax": a.kmax}),
    );
    let moments = Executor::default().map(&(0..=a.kmax).collect::<Vec<_>>(), |&k| mu.moment(k));
    let moments = moments.into_iter().collect::<Result<Vec<_>, _>>()?;
    report.result = json!({
        "measure": mu.to_json(),
        "moments": moments.iter().enumerate().map(|(k, m)| json!({"k": k, "value": padic_json(m)})).collect::<Vec<_>>(),
    });
    report.certification = json!({"precision": mu.precision(), "truncation": a.deg});
    let mut text = format!("Amice transform mod (p^{}, t^{}) with p = {}\n", a.prec, a.deg, a.p);
    for (n, c) in mu.series().terms().take(12) {
        let _ = writeln!(text, "  b_{n} = {}", padic_text(c));
    }
    if mu.series().num_terms() > 12 {
        let _ = writeln!(text, "  ... {} nonzero coefficients in all", mu.series().num_terms());
    }
    let mut csv = String::from("k,moment,precision\n");
    for (k, m) in moments.iter().enumerate() {
        let _ = writeln!(text, "  int z^{k} = {}", padic_text(m));
        let _ = writeln!(csv, "{k},{},{}", m.value(), m.prec());
    }
    report.text = text;
    report.csv = Some(csv);
    Ok((report, a.output))
}

fn amice_invert(a: AmiceInvertArgs) -> Outcome {
    let ring = padic_ring(a.p, a.prec)?;
    if a.coeffs.is_empty() || a.coeffs.len() as i64 > a.deg {
        return Err(usage("--coeffs needs between 1 and --deg values"));
    }
    let coeffs = a.coeffs.iter().map(|c| ring.parse(c)).collect::<Result<Vec<_>, _>>()?;
    let terms = coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c));
    let mu = AmiceMeasure::new(a.p, TruncSeries::from_terms(&ring, terms, a.deg), 0)?;
    let classes: Vec<u64> = (0..a.p.pow(a.level)).collect();
    let mut report = Report::new(
        "amice invert",
        json!({"p": a.p, "prec": a.prec, "deg": a.deg, "coeffs": a.coeffs, "level": a.level}),
    );
    let masses = Executor::default().map(&classes, |&c| {
        let values = classes.iter().map(|&b| BigInt::from((b == c) as u8)).collect();
        let f = SampledFunction::locally_constant(&ring, a.p, a.level, values, (a.deg - 1).max(0) as u64)?;
        mu.evaluate(&mahler_coeffs(&f))
    });
    let masses: Vec<PAdicScalar> = masses
        .into_iter()
        .map(|m| m.map(|c| c.value.truncate(c.precision.unwrap_or(a.prec))))
        .collect::<Result<_, _>>()?;
    let mut text = format!("ball masses at level {} from an Amice series mod t^{}\n", a.level, a.deg);
    let mut csv = String::from("class,mass,precision\n");
    let mut rows = Vec::new();
    let mut total = ring.zero();
    for (c, m) in classes.iter().zip(&masses) {
        let _ = writeln!(text, "  mu({c} + {}^{} Z_{}) = {}", a.p, a.level, a.p, padic_text(m));
        let _ = writeln!(csv, "{c},{},{}", m.value(), m.prec());
        rows.push(json!({"class": c, "mass": padic_json(m)}));
        total = ring.add(&total, m);
    }
    let achieved = masses.iter().map(|m| m.prec()).min().unwrap_or(a.prec);
    if achieved < a.prec {
        let need = amice_tail_bound(a.p, a.level, 0, a.prec);
        report.degrade(format!("only {achieved} digits certified; --deg {need} certifies {}", a.prec));
    }
    let b0 = mu.series().coeff(0);
    if !total.congruent(&b0, achieved) {
        report.fail(format!("ball masses sum to {}, total mass is {}", padic_text(&total), padic_text(&b0)));
    }
    report.result = json!({"masses": rows});
    report.certification = json!({"precision": achieved, "truncation": a.deg});
    report.text = text;
    report.csv = Some(csv);
    Ok((report, a.output))
}

fn weierstrass(c: &CurveArgs) -> Result<WeierstrassData, CliError> {
    Ok(WeierstrassData::new(parse_rational(&c.g2)?, parse_rational(&c.g3)?))
}

fn curve_request(c: &CurveArgs) -> Value {
    json!({"g2": c.g2, "g3": c.g3, "n": c.n, "p": c.p, "prec": c.p.map(|_| c.prec)})
}

fn x_depleted(c: CurveArgs, deg: i64, output: Output) -> Outcome {
    let w = weierstrass(&c)?;
    if c.n == 0 {
        return Err(usage("--n must be nonzero"));
    }
    if deg < 2 {
        return Err(usage("--deg must be at least 2"));
    }
    let mut request = curve_request(&c);
    request["deg"] = json!(deg);
    let mut report = Report::new("eis x-depleted", request);
    let (xn, _) = depleted_formal(&w, c.n, (deg + 1).max(4) as u32)?;
    let xn = xn.with_trunc(deg);
    let (series, text, trunc) = match c.p {
        Some(p) => {
            eisenstein_prime(p, c.n)?;
            let ring = padic_ring(p, c.prec)?;
            let r = xn.reduce_into(&ring)?;
            (r.to_json(), format!("x^({}) = {r}\n", c.n), r.trunc())
        }
        None => (xn.to_json(), format!("x^({}) = {xn}\n", c.n), xn.trunc()),
    };
    let mut csv = String::from("exponent,coefficient\n");
    for pair in series["coeffs"].as_array().into_iter().flatten().filter_map(|x| x.as_array()) {
        let _ = writeln!(csv, "{},{}", pair[0], pair[1].as_str().unwrap_or_default());
    }
    report.result = json!({"series": series});
    report.certification = json!({"truncation": trunc, "precision": c.p.map(|_| c.prec)});
    report.text = text;
    report.csv = Some(csv);
    Ok((report, output))
}

fn table_text<R: Ring>(title: &str, t: &MomentTable<R>, show: impl Fn(&R::Elem) -> String) -> String {
    let mut s = format!("{title}\n{:>4}  {:<11}{:<11}value\n", "k", "system", "precision");
    for e in &t.entries {
        let prec = e.precision.map(|p| p.to_string()).unwrap_or_else(|| "exact".into());
        let _ = writeln!(s, "{:>4}  {:<11}{prec:<11}{}", e.k, e.system.to_string(), show(&e.value));
    }
    s
}

fn eis_moments(c: CurveArgs, kmax: u32, mode: MomentMode, output: Output) -> Outcome {
    let w = weierstrass(&c)?;
    if kmax < 2 {
        return Err(usage("--kmax must be at least 2"));
    }
    if let Some(p) = c.p {
        eisenstein_prime(p, c.n)?;
        padic_ring(p, c.prec)?;
    } else if c.n == 0 {
        return Err(usage("--n must be nonzero"));
    }
    let mut request = curve_request(&c);
    request["kmax"] = json!(kmax);
    request["mode"] = json!(format!("{mode:?}").to_lowercase());
    let mut report = Report::new("eis moments", request);
    let rational = matches!(mode, MomentMode::Rational | MomentMode::Both).then(|| eis_moments_rational(&w, c.n, kmax));
    let formal = match mode {
        MomentMode::Formal | MomentMode::Both => Some(eis_moments_formal(&w, c.n, kmax)?),
        MomentMode::Rational => None,
    };
    let mut oracles = Vec::new();
    if let (Some(f), Some(r)) = (&formal, &rational) {
        oracles.push("lattice recursion");
        for (a, b) in f.entries.iter().zip(&r.entries) {
            if a.value != b.value {
                report.fail(format!("k = {}: formal {} vs rational {}", a.k, a.value, b.value));
            }
        }
    }
    let table = formal.or(rational).expect("one pipeline always runs");
    if let Err(e) = table.check_vanishing() {
        report.fail(e.to_string());
    }
    match c.p {
        Some(p) => match reduce_table(&table, p, c.prec) {
            Ok(t) => {
                report.text = table_text(&format!("moments of Eis^({}) mod {p}^{}", c.n, c.prec), &t, padic_text);
                report.csv = Some(t.to_csv()?);
                report.result = t.to_json();
            }
            Err(Error::NotIntegral(msg)) => {
                report.fail(format!("a moment is not {p}-integral: {msg}"));
                report.text = table_text(&format!("moments of Eis^({})", c.n), &table, |v| v.to_string());
                report.csv = Some(table.to_csv()?);
                report.result = table.to_json();
            }
            Err(e) => return Err(e.into()),
        },
        None => {
            report.text = table_text(&format!("moments of Eis^({})", c.n), &table, |v| v.to_string());
            report.csv = Some(table.to_csv()?);
            report.result = table.to_json();
        }
    }
    report.certification = json!({
        "precision": c.p.map(|_| c.prec),
        "truncation": table.truncation,
        "oracles": oracles,
    });
    Ok((report, output))
}

fn tate_moments(p: u64, prec: u32, n: i64, kmax: u32, qorder: i64, output: Output) -> Outcome {
    padic_ring(p, prec)?;
    eisenstein_prime(p, n)?;
    if kmax < 2 || qorder < 1 {
        return Err(usage("--kmax must be at least 2 and --qorder at least 1"));
    }
    let mut report = Report::new("tate moments", json!({"p": p, "prec": prec, "n": n, "kmax": kmax, "qorder": qorder}));
    let table = tate_katz_moments(n, kmax - 2, qorder, p, prec)?;
    let js: Vec<u32> = (2..=kmax - 2).step_by(2).collect();
    let mut oracles = Vec::new();
    if !js.is_empty() {
        oracles.push("q-expansion of Eisenstein series");
        let katz = katz_comparison(n, &js, qorder, p, prec)?;
        if !katz.calibration.congruent(&PAdicRing::new(p, prec)?.one(), prec) {
            report.fail(format!("weight-4 calibration factor is {}", padic_text(&katz.calibration)));
        }
        for (j, m, e, ok) in &katz.entries {
            if !ok {
                report.fail(format!("k = {}: measured {m}, expected {e}", j + 2));
            }
        }
    }
    if let Err(e) = table.check_vanishing() {
        report.fail(e.to_string());
    }
    report.text = table_text(&format!("Tate moments of Eis^({n}) mod ({p}^{prec}, q^{qorder})"), &table, |s| {
        let terms: Vec<String> = s.terms().map(|(e, c)| format!("{}*q^{e}", c.value())).collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    });
    report.csv = Some(table.to_csv()?);
    report.result = table.to_json();
    report.certification = json!({"precision": prec, "qOrder": qorder, "truncation": table.truncation, "oracles": oracles});
    Ok((report, output))
}

fn zeta(a: ZetaArgs) -> Outcome {
    let ring = padic_ring(a.p, a.prec)?;
    eisenstein_prime(a.p, a.n)?;
    if a.k < 3 {
        return Err(usage("--k must be at least 3"));
    }
    let mut report = Report::new("zeta", json!({"p": a.p, "n": a.n, "k": a.k, "prec": a.prec, "deg": a.deg}));
    let need = amice_tail_bound(a.p, 1, 0, a.prec) as i64;
    let deg = a.deg.unwrap_or(need);
    if deg < 1 {
        return Err(usage("--deg must be positive"));
    }
    let target = if deg < need {
        let reachable = certifiable_precision(a.p, 0, deg);
        report.degrade(format!("--deg {deg} certifies {reachable} digits; --deg {need} is needed for {}", a.prec));
        reachable
    } else {
        a.prec
    };
    let value = if target == 0 {
        ring.zero().truncate(0)
    } else {
        let z = padic_zeta_value_with_degree(a.p, a.n, a.k, target, Some(deg))?;
        let digits = z.precision.unwrap_or(target);
        ring.from_bigint(&BigInt::from(z.value.value())).truncate(digits)
    };
    if value.prec() < a.prec && deg >= need {
        report.degrade(format!("{} of {} digits certified", value.prec(), a.prec));
    }
    let expected_q: BigRational = zeta_expected(a.p, a.n, a.k);
    let expected = ring.from_rational(&expected_q)?;
    let agrees = value.congruent(&expected, value.prec());
    if !agrees {
        report.fail(format!("measured {} but (1 - n^k)(1 - p^(k-1)) zeta(1 - k) = {expected_q} is {}", padic_text(&value), padic_text(&expected)));
    }
    report.result = json!({"value": padic_json(&value), "expected": expected_q.to_string(), "agrees": agrees});
    report.certification = json!({
        "precision": value.prec(),
        "truncation": deg,
        "oracles": ["(1 - n^k)(1 - p^(k-1)) zeta(1 - k) from Bernoulli numbers"],
    });
    report.text = format!(
        "unit moment of Eis^({}) at k = {}, p = {}: {}\nexpected (1 - n^k)(1 - p^(k-1)) zeta(1 - k) = {expected_q}\n",
        a.n, a.k, a.p, padic_text(&value)
    );
    report.csv = Some(format!("p,n,k,value,precision,expected\n{},{},{},{},{},{expected_q}\n", a.p, a.n, a.k, value.value(), value.prec()));
    Ok((report, a.output))
}

fn finite_text(d: &FiniteLevelData) -> String {
    d.entries.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cartier_transform(p: u64, level: u32, prec: u32, direction: DirectionArg, values: Vec<i64>, output: Output) -> Outcome {
    padic_ring(p, prec)?;
    let (side, dir) = match direction {
        DirectionArg::ToFunction => (Side::Measure, Direction::ToFunction),
        DirectionArg::ToMeasure => (Side::Function, Direction::ToMeasure),
    };
    let input = FiniteLevelData::new(p, level, prec, side, values.clone())?;
    let out = finite_level_transform(&input, dir)?;
    let back = finite_level_transform(&out, match dir {
        Direction::ToFunction => Direction::ToMeasure,
        Direction::ToMeasure => Direction::ToFunction,
    })?;
    let mut report = Report::new(
        "cartier transform",
        json!({"p": p, "level": level, "prec": prec, "direction": format!("{direction:?}"), "values": values}),
    );
    if back != input {
        report.fail("the inverse transform does not recover the input".into());
    }
    report.result = json!({"entries": out.entries});
    report.certification = json!({"precision": prec});
    report.text = format!("{}\n", finite_text(&out));
    let mut csv = String::from("index,value\n");
    for (i, v) in out.entries.iter().enumerate() {
        let _ = writeln!(csv, "{i},{v}");
    }
    report.csv = Some(csv);
    Ok((report, output))
}

fn cartier_check(p: u64, level: u32, prec: u32, trials: usize, seed: u64, output: Output) -> Outcome {
    padic_ring(p, prec)?;
    let r = level_compatibility_check(p, level, prec, trials, seed)?;
    let mut report = Report::new("cartier check", json!({"p": p, "level": level, "prec": prec, "trials": trials, "seed": seed}));
    let mut text = String::new();
    let mut csv = String::from("check,cases,status\n");
    let mut rows = Vec::new();
    for c in &r.checks {
        let status = if c.failure.is_none() { "ok" } else { "FAIL" };
        let _ = writeln!(text, "{:<28}{:>6} cases  {status}", c.name, c.cases);
        let _ = writeln!(csv, "{},{},{status}", c.name, c.cases);
        rows.push(json!({"check": c.name, "cases": c.cases, "failure": c.failure}));
        if let Some(f) = &c.failure {
            report.fail(format!("{}: {f}", c.name));
        }
    }
    report.result = json!({"checks": rows});
    report.certification = json!({"precision": prec});
    report.text = text;
    report.csv = Some(csv);
    Ok((report, output))
}

fn verify(a: VerifyArgs) -> Outcome {
    let suites = parse_suites(&a.suite)?;
    let outcomes = run_suites(&suites, Executor::default(), a.seed);
    let mut report = Report::new("verify", json!({"suite": a.suite, "seed": a.seed}));
    let mut text = String::new();
    let mut csv = Vec::new();
    let mut rows = Vec::new();
    for o in &outcomes {
        let _ = writeln!(text, "{o}");
        let status = if o.passed { "ok" } else { "FAIL" };
        csv.push(vec![o.suite.to_string(), o.name.to_string(), status.to_string(), o.detail.clone()]);
        rows.push(json!({"suite": o.suite.name(), "check": o.name, "passed": o.passed, "detail": o.detail}));
        if !o.passed {
            report.fail(format!("{}/{}: {}", o.suite, o.name, o.detail));
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(text, "{} checks, {failed} failed", outcomes.len());
    report.result = json!({"checks": rows});
    report.text = text;
    report.csv = Some(csv_table(&["suite", "check", "status", "detail"], csv)?);
    if report.status == Status::Ok {
        report.diagnostics.clear();
    }
    Ok((report, a.output))
}
