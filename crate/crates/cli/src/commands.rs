use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thresholds_core::arith::{self, render};
use thresholds_core::asymptotic::{
    arn_asym, default_tolerance, golden_ratio_demo, val_asym, AsymptoticEstimate, GradedMonomialSequence,
};
use thresholds_core::frobenius::{fpt_cubic_cone, fpt_enclosure, is_ordinary_cubic, nu, FrobeniusContext};
use thresholds_core::grobner::PolyIdeal;
use thresholds_core::lct0::{classify, lct_closed_form};
use thresholds_core::newton::{check_amgm, lct_monomial, multiplicity_monomial};
use thresholds_core::polyring::{infer_nvars, parse};
use thresholds_core::redmodp::{compare_family, ComparisonRow, FamilyModel, Relation};
use thresholds_core::testideal::{default_grid, fjump_scan, tau, Exactness, Lambda, TauContext};
use thresholds_core::{Field, MonomialIdeal, Polynomial, Rational, RationalPoint, Ring, Threshold};

use crate::config::Config;
use crate::report::{approx, num, rat, threshold, Report};
use crate::{CliError, Command, IdealArgs};

type Out = Result<Report, CliError>;

pub fn dispatch(command: &Command, config: Config) -> Out {
    match command {
        Command::Lct { input } => lct(input),
        Command::Fpt { input, p, .. } => fpt(input, *p, &config),
        Command::Nu { input, p, e } => nu_cmd(input, *p, *e, &config),
        Command::Tau { input, p, lambda, .. } => tau_cmd(input, *p, lambda, &config),
        Command::Fjump { input, p, lambda, .. } => fjump(input, *p, lambda.as_deref(), &config),
        Command::Newton { monomial: Some(m), .. } => newton(m),
        Command::Newton { random, n, .. } => newton_random(random.unwrap_or(0), *n, &config),
        Command::Asym { powers, valuation, .. } => asym(powers.as_deref(), valuation.as_deref(), &config),
        Command::Compare { poly, diagonal, primes, pmax, .. } => {
            compare(poly.as_deref(), diagonal.as_deref(), primes.as_deref(), *pmax, &config)
        }
        Command::Ordinary { poly, p } => ordinary(poly, *p),
    }
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Generators from a comma list, all in one ring over `field`.
fn generators(text: &str, field: Field) -> Result<Vec<Polynomial>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let mut n = 1;
    for part in &parts {
        n = n.max(infer_nvars(part)?);
    }
    let ring = Ring::new(n, field)?;
    let gens = parts
        .iter()
        .map(|part| parse(part, ring))
        .collect::<thresholds_core::Result<Vec<_>>>()?;
    Ok(gens)
}

fn input_text(input: &IdealArgs) -> &str {
    input
        .poly
        .as_deref()
        .or(input.ideal.as_deref())
        .or(input.monomial.as_deref())
        .expect("clap requires one input")
}

fn prime_ideal(input: &IdealArgs, p: u64) -> Result<Vec<Polynomial>, CliError> {
    arith::check_prime(p)?;
    let gens = generators(input_text(input), Field::Prime(p))?;
    if input.poly.is_some() && gens.len() != 1 {
        return Err(input_error("--poly takes a single polynomial; use --ideal for a list"));
    }
    if input.monomial.is_some() && !gens.iter().all(Polynomial::is_monomial) {
        return Err(input_error("--monomial takes monomials only"));
    }
    Ok(gens)
}

fn ideal_strings(gens: &[Polynomial]) -> Value {
    Value::from(gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn lct(input: &IdealArgs) -> Out {
    let mut r = Report::new("lct");
    let text = input_text(input);
    let (value, method) = if let Some(m) = &input.monomial {
        let a = MonomialIdeal::parse(m, None)?;
        let v = lct_monomial(&a)?;
        (v, "LP")
    } else {
        let gens = generators(text, Field::Rational)?;
        let [f] = gens.as_slice() else {
            return Err(input_error("lct takes a single polynomial or a monomial ideal"));
        };
        let t = lct_closed_form(&classify(f)?)?;
        let v = t.exact_value().cloned().ok_or_else(|| CliError::Internal("closed form is not exact".into()))?;
        (Threshold::Finite(v), t.method.as_str())
    };
    r.field("input", Value::from(text));
    r.field("method", Value::from(method));
    r.field(
        "lct",
        match &value {
            Threshold::Finite(v) => rat(v),
            Threshold::Infinity => Value::from("inf"),
        },
    );
    r.line(value.to_string());
    Ok(r)
}

fn fpt(input: &IdealArgs, p: u64, config: &Config) -> Out {
    let gens = prime_ideal(input, p)?;
    let n = gens[0].ring().nvars();
    let ctx = FrobeniusContext::new(p, n, config.e_max.unwrap_or(3))?.with_budget(config.budget);
    let (t, seq) = fpt_enclosure(&gens, &ctx)?;
    let mut r = Report::new("fpt");
    r.certified = t.certified;
    r.field("p", num(p));
    r.field("ideal", ideal_strings(&gens));
    r.field("fpt", threshold(&t));
    r.field("nu", Value::from(seq.values.iter().map(num).collect::<Vec<_>>()));
    let status = if t.certified { "certified" } else { "enclosure" };
    r.line(format!("fpt {} ({}, {})", t, t.method.as_str(), status));
    let nus: Vec<String> = seq.values.iter().map(u64::to_string).collect();
    r.line(format!("nu {}", nus.join(" ")));
    Ok(r)
}

fn nu_cmd(input: &IdealArgs, p: u64, e: u32, config: &Config) -> Out {
    let gens = prime_ideal(input, p)?;
    let v = nu(&gens, e, &config.budget)?;
    let mut r = Report::new("nu");
    r.field("p", num(p));
    r.field("e", num(e));
    r.field("ideal", ideal_strings(&gens));
    r.field("nu", num(v));
    r.line(v.to_string());
    Ok(r)
}

fn tau_context(config: &Config) -> TauContext {
    TauContext {
        e_max: config.e_max.unwrap_or(5),
        budget: config.budget,
    }
}

fn tau_cmd(input: &IdealArgs, p: u64, lambda: &str, config: &Config) -> Out {
    let gens = prime_ideal(input, p)?;
    let a = PolyIdeal::new(gens[0].ring(), gens)?;
    let lambda = Lambda::parse(lambda)?;
    let res = tau(&a, &lambda, &tau_context(config))?;
    let mut r = Report::new("tau");
    r.certified = res.stabilized;
    r.field("p", num(p));
    r.field("lambda", rat(lambda.value()));
    r.field("ideal", ideal_strings(a.gens()));
    r.field("tau", ideal_strings(&basis_of(&res.ideal)));
    r.field("stabilized", Value::from(res.stabilized));
    r.field("iterations", num(res.iterates.len()));
    r.line(format!("tau {}", res.ideal));
    r.line(format!("stabilized {}", res.stabilized));
    Ok(r)
}

fn basis_of(a: &PolyIdeal) -> Vec<Polynomial> {
    a.cached_basis().map(<[Polynomial]>::to_vec).unwrap_or_else(|| a.gens().to_vec())
}

fn fjump(input: &IdealArgs, p: u64, lambda: Option<&str>, config: &Config) -> Out {
    let gens = prime_ideal(input, p)?;
    let a = PolyIdeal::new(gens[0].ring(), gens)?;
    let lambda_max = Lambda::parse(lambda.unwrap_or("1"))?;
    let grid = config.grid.unwrap_or_else(|| default_grid(p));
    let rep = fjump_scan(&a, &lambda_max, grid, &tau_context(config))?;
    let mut r = Report::new("fjump");
    r.certified = rep.exactness == Exactness::Certified && rep.stabilized;
    r.field("p", num(p));
    r.field("ideal", ideal_strings(a.gens()));
    r.field("lambda_max", rat(&rep.lambda_max));
    r.field("grid", num(rep.grid));
    r.field("exactness", Value::from(rep.exactness.as_str()));
    r.field("stabilized", Value::from(rep.stabilized));
    let jumps: Vec<Value> = rep
        .jumps
        .iter()
        .map(|j| {
            json!({
                "lambda": rat(&j.lambda),
                "before": ideal_strings(&basis_of(&j.before)),
                "after": ideal_strings(&basis_of(&j.after)),
                "certified": j.certified,
            })
        })
        .collect();
    r.field("jumps", Value::from(jumps));
    let list: Vec<String> = rep.jumps.iter().map(|j| render(&j.lambda)).collect();
    r.line(format!("jumps {}", list.join(" ")));
    r.line(format!("exactness {} (grid {})", rep.exactness.as_str(), rep.grid));
    for j in &rep.jumps {
        r.line(format!("{}\t{} -> {}", render(&j.lambda), j.before, j.after));
    }
    Ok(r)
}

fn monomial_row(a: &MonomialIdeal) -> Result<(Value, String, bool), CliError> {
    let lct = lct_monomial(a)?;
    let e = multiplicity_monomial(a)?;
    let ok = check_amgm(a)?;
    let gens: Vec<String> = a.gens().iter().map(|g| format!("{g:?}")).collect();
    let value = json!({
        "generators": gens,
        "lct": match &lct { Threshold::Finite(v) => rat(v), Threshold::Infinity => Value::from("inf") },
        "multiplicity": num(&e),
        "amgm": ok,
    });
    Ok((value, format!("lct {lct}  e {e}  amgm {ok}"), ok))
}

fn newton(text: &str) -> Out {
    let a = MonomialIdeal::parse(text, None)?;
    let mut r = Report::new("newton");
    r.field("input", Value::from(text));
    let lct = lct_monomial(&a)?;
    r.field(
        "lct",
        match &lct {
            Threshold::Finite(v) => rat(v),
            Threshold::Infinity => Value::from("inf"),
        },
    );
    r.line(format!("lct {lct}"));
    if a.is_m_primary() {
        let e = multiplicity_monomial(&a)?;
        let ok = check_amgm(&a)?;
        r.field("multiplicity", num(&e));
        r.field("amgm", Value::from(ok));
        r.line(format!("multiplicity {e}"));
        r.line(format!("amgm {ok}"));
    }
    Ok(r)
}

/// `x_i^{a_i}` for every variable plus a few random monomials.
fn random_ideal(rng: &mut ChaCha8Rng, max_n: usize) -> Result<MonomialIdeal, CliError> {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut gens = Vec::new();
    for i in 0..n {
        let mut g = vec![0; n];
        g[i] = rng.gen_range(1..=8);
        gens.push(g);
    }
    for _ in 0..rng.gen_range(0..=3) {
        let g: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
        if g.iter().any(|&x| x > 0) {
            gens.push(g);
        }
    }
    Ok(MonomialIdeal::new(n, gens)?)
}

fn newton_random(k: usize, max_n: usize, config: &Config) -> Out {
    if k == 0 {
        return Err(input_error("--random needs a positive count"));
    }
    if !(1..=6).contains(&max_n) {
        return Err(input_error("--n must be between 1 and 6"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::with_capacity(k);
    let mut all = true;
    let mut r = Report::new("newton");
    for i in 0..k {
        let a = random_ideal(&mut rng, max_n)?;
        let (row, line, ok) = monomial_row(&a)?;
        all &= ok;
        rows.push(row);
        r.line(format!("{i}\t{line}"));
    }
    r.field("seed", num(config.seed));
    r.field("ideals", Value::from(rows));
    r.field("amgm_all", Value::from(all));
    r.line(format!("amgm holds for all {k}: {all}"));
    Ok(r)
}

fn estimate_fields(r: &mut Report, est: &AsymptoticEstimate) {
    let rows: Vec<Value> = est
        .values
        .iter()
        .map(|(m, v)| json!({ "m": num(m), "value": rat(v), "approx": approx(v) }))
        .collect();
    r.field("values", Value::from(rows));
    r.field("lo", rat(&est.lo));
    r.field("hi", rat(&est.hi));
    r.field("convergence", Value::from(est.convergence.as_str()));
    if let Some((lo, hi)) = &est.reference {
        r.field("reference", json!({ "lo": rat(lo), "hi": rat(hi), "approx": approx(lo) }));
    }
    r.line("m\tvalue\tapprox");
    for (m, v) in &est.values {
        r.line(format!("{m}\t{}\t{}", render(v), arith::decimal(v, 8)));
    }
    r.line(format!("band [{}, {}] ({})", arith::decimal(&est.lo, 8), arith::decimal(&est.hi, 8), est.convergence.as_str()));
}

fn weights(text: &str) -> Result<RationalPoint, CliError> {
    let coords = text
        .split(',')
        .map(arith::parse_rational)
        .collect::<thresholds_core::Result<Vec<Rational>>>()?;
    Ok(RationalPoint::new(coords)?)
}

fn asym(powers: Option<&str>, valuation: Option<&str>, config: &Config) -> Out {
    let m_max = config.m_max.unwrap_or(2048);
    let seq = match powers {
        Some(text) => GradedMonomialSequence::PowersOf(MonomialIdeal::parse(text, None)?),
        None => GradedMonomialSequence::HyperbolaQ,
    };
    let mut r = Report::new("asym");
    r.field("sequence", Value::from(powers.map_or("hyperbola".to_string(), |t| format!("powers of ({t})"))));
    r.field("m_max", num(m_max));
    if let Some(v) = valuation {
        let v = weights(v)?;
        let est = val_asym(&seq, &v, m_max, &config.budget)?;
        r.field("invariant", Value::from("valuation"));
        r.field("weights", Value::from(v.coords().iter().map(render).collect::<Vec<_>>()));
        estimate_fields(&mut r, &est);
        return Ok(r);
    }
    r.field("invariant", Value::from("arnold multiplicity"));
    match seq {
        GradedMonomialSequence::HyperbolaQ => {
            let tol = default_tolerance(m_max);
            let rep = golden_ratio_demo(m_max, &tol, &config.budget)?;
            r.certified = rep.within_tolerance;
            estimate_fields(&mut r, &rep.estimate);
            r.field("tolerance", rat(&rep.tolerance));
            r.field("within_tolerance", Value::from(rep.within_tolerance));
            r.field("eta", json!({ "lo": rat(&rep.eta.0), "hi": rat(&rep.eta.1), "approx": approx(&rep.eta.0) }));
            r.line(format!("eta {}", arith::decimal(&rep.eta.0, 8)));
            r.line(format!("within {} of eta: {}", render(&rep.tolerance), rep.within_tolerance));
        }
        _ => {
            let est = arn_asym(&seq, m_max, &config.budget)?;
            estimate_fields(&mut r, &est);
        }
    }
    Ok(r)
}

fn primes_from(list: Option<&str>, pmax: Option<u64>) -> Result<Vec<u64>, CliError> {
    match list {
        Some(text) => text
            .split(',')
            .map(|s| {
                let p: u64 = s.trim().parse().map_err(|_| input_error(format!("`{}` is not a prime", s.trim())))?;
                Ok(arith::check_prime(p)?)
            })
            .collect(),
        None => Ok((2..=pmax.unwrap_or(100)).filter(|&p| arith::is_prime(p)).collect()),
    }
}

fn row_json(row: &ComparisonRow) -> Value {
    json!({
        "p": num(row.p),
        "fpt": threshold(&row.fpt),
        "lct0": rat(&row.lct0),
        "relation": row.relation.as_str(),
        "degenerate": row.degenerate,
        "splitting": row.splitting.map(|(a, n)| json!({ "residue": num(a), "modulus": num(n) })),
        "note": row.note,
    })
}

fn compare(poly: Option<&str>, diagonal: Option<&str>, primes: Option<&str>, pmax: Option<u64>, config: &Config) -> Out {
    let model = match (poly, diagonal) {
        (Some(text), _) => {
            let gens = generators(text, Field::Integer)?;
            let [f] = gens.as_slice() else {
                return Err(input_error("compare takes a single polynomial"));
            };
            FamilyModel::from_polynomial(f)?
        }
        (None, Some(text)) => {
            let exps = text
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|_| input_error(format!("bad exponent `{}`", s.trim()))))
                .collect::<Result<Vec<_>, _>>()?;
            FamilyModel::diagonal(&exps)?
        }
        (None, None) => unreachable!("clap requires --poly or --diagonal"),
    };
    let mut primes = primes_from(primes, pmax)?;
    primes.sort_unstable();
    primes.dedup();
    let e_max = config.e_max.unwrap_or(2);
    let budget = config.budget;
    // one thread per chunk of primes; rows come back in prime order
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(primes.len().max(1));
    let chunks: Vec<Vec<u64>> = (0..workers).map(|w| primes.iter().copied().skip(w).step_by(workers).collect()).collect();
    let results: Vec<thresholds_core::Result<Vec<ComparisonRow>>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let model = &model;
                s.spawn(move || compare_family(model, chunk, e_max, &budget))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut rows = Vec::new();
    for res in results {
        rows.extend(res?);
    }
    rows.sort_by_key(|r| r.p);
    let mut r = Report::new("compare");
    r.certified = rows.iter().all(|row| row.relation != Relation::Inconclusive);
    r.field("lct0", rat(&model.lct0()?));
    r.field("e_max", num(e_max));
    r.field("rows", Value::from(rows.iter().map(row_json).collect::<Vec<_>>()));
    r.text = thresholds_core::redmodp::render_rows(&rows);
    Ok(r)
}

fn ordinary(text: &str, p: u64) -> Out {
    arith::check_prime(p)?;
    let gens = generators(text, Field::Prime(p))?;
    let [f] = gens.as_slice() else {
        return Err(input_error("ordinary takes a single cubic"));
    };
    if f.ring().nvars() != 3 {
        return Err(input_error("expected a cubic in x, y, z"));
    }
    let ord = is_ordinary_cubic(f)?;
    let fpt = fpt_cubic_cone(f)?;
    let mut r = Report::new("ordinary");
    r.field("p", num(p));
    r.field("poly", Value::from(f.to_string()));
    r.field("ordinary", Value::from(ord));
    r.field("fpt", rat(&fpt));
    r.line(format!("ordinary {ord}"));
    r.line(format!("fpt {}", render(&fpt)));
    Ok(r)
}
