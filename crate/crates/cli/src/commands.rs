use crate::args::*;
use crate::parse::{parse_curve, parse_poly, ParseError};
use crate::report::{fmt_f64, Outcome, Table};
use polybox::boxcount::{enumerate_box_points, exponent_scan_based, fitted_slope, residue_stats, Point};
use polybox::detmethod::{
    interpolate_form, max_points_on_wcurve, mean_distinct_identity, monomials_upto, n_of, r_of,
    verify_ord_inequality, wset_grid, DEFAULT_SUBSET_BUDGET, DEFAULT_TUPLE_BUDGET,
};
use polybox::elliptic::{
    count_n, count_n_lambda, extremal_witnesses, small_coeff_model, solve_pigeonhole, theorem19_scan, TauPlan,
};
use polybox::ff::random_irreducible;
use polybox::{BivarPoly, Field, FieldParams, Interval, PigeonInstance, PlaneBox, PointSet, Poly, WSet};
use serde_json::{json, Map, Value};
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Parse { flag: String, err: ParseError },
    Domain(polybox::Error),
    Input(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(polybox::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, extra) = match self {
            CliError::Parse { flag, err } => ("parse", json!({ "flag": flag, "offset": err.offset })),
            CliError::Domain(polybox::Error::BudgetExceeded { required, budget }) => (
                "budget_exceeded",
                json!({ "required": required.to_string(), "budget": budget.to_string() }),
            ),
            CliError::Domain(_) => ("domain", json!({})),
            CliError::Input(_) => ("input", json!({})),
            CliError::Io(_) => ("io", json!({})),
        };
        let mut obj = json!({ "error": kind, "message": self.to_string() });
        if let (Some(o), Value::Object(e)) = (obj.as_object_mut(), extra) {
            o.extend(e);
        }
        obj
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { flag, err } => write!(f, "--{flag}: {err}"),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Input(s) | CliError::Io(s) => write!(f, "{s}"),
        }
    }
}

impl From<polybox::Error> for CliError {
    fn from(e: polybox::Error) -> Self {
        CliError::Domain(e)
    }
}

type CResult<T> = Result<T, CliError>;

/// Accumulates the parameters recorded in the manifest.
struct Params(Map<String, Value>);

impl Params {
    fn new(field: &Field) -> Params {
        let mut m = Map::new();
        m.insert("field".into(), serde_json::to_value(field.params()).expect("serializable"));
        m.insert("q".into(), field.q().into());
        Params(m)
    }

    fn set(&mut self, k: &str, v: impl Into<Value>) {
        self.0.insert(k.into(), v.into());
    }
}

fn field_of(o: &FieldOpts) -> CResult<Field> {
    let field = match &o.modulus {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let params: FieldParams =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Field::from_params(&params)?
        }
        None => match o.ext_k {
            Some(k) => Field::extension(o.q, k, None)?,
            None => Field::with_order(o.q)?,
        },
    };
    let want = match o.ext_k {
        Some(k) => (o.q as u64).checked_pow(k),
        None => Some(o.q as u64),
    };
    if want != Some(field.q() as u64) {
        return Err(CliError::Input(format!("--modulus describes F_{}, not the requested field", field.q())));
    }
    Ok(field)
}

fn poly_arg(flag: &str, text: &str, field: &Field) -> CResult<Poly> {
    parse_poly(text, field).map_err(|err| CliError::Parse { flag: flag.into(), err })
}

fn curve_arg(text: &str, field: &Field) -> CResult<BivarPoly> {
    parse_curve(text, field).map_err(|err| CliError::Parse { flag: "curve".into(), err })
}

fn modulus_of(o: &ModulusOpts, field: &Field, seed: u64) -> CResult<Poly> {
    match (&o.f, o.f_deg) {
        (Some(text), _) => poly_arg("f", text, field),
        (None, Some(deg)) => Ok(random_irreducible(field, deg, seed)?),
        (None, None) => Err(CliError::Input("one of --f, --f-deg is required".into())),
    }
}

fn square_box(field: &Field, n: u32, base: &BaseOpts) -> CResult<PlaneBox> {
    let bx = poly_arg("base-x", &base.base_x, field)?;
    let by = poly_arg("base-y", &base.base_y, field)?;
    Ok(PlaneBox::new(Interval::new(bx, n)?, Interval::new(by, n)?)?)
}

fn point_set(o: &SetOpts, field: &Field, p: &mut Params) -> CResult<PointSet> {
    if let Some(text) = &o.points {
        let raw: Vec<(String, String)> = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("--points must be a JSON array of [x, y] string pairs: {e}")))?;
        let pts = raw
            .iter()
            .map(|(x, y)| Ok((poly_arg("points", x, field)?, poly_arg("points", y, field)?)))
            .collect::<CResult<Vec<Point>>>()?;
        let s = PointSet::new(pts);
        p.set("points", points_json(s.points()));
        return Ok(s);
    }
    let (Some(curve), Some(n)) = (&o.curve, o.n) else {
        return Err(CliError::Input("give --points, or --curve with --n".into()));
    };
    let g = curve_arg(curve, field)?;
    let bx = square_box(field, n, &o.base)?;
    p.set("curve", g.to_string());
    p.set("n", n);
    p.set("base_x", bx.x.base().to_string());
    p.set("base_y", bx.y.base().to_string());
    Ok(enumerate_box_points(&g, &bx)?)
}

fn w_set(o: &WOpts, field: &Field, p: &mut Params) -> CResult<WSet> {
    let w = match (o.omega, o.d, o.m) {
        (_, Some(d), Some(m)) => {
            p.set("d", d);
            p.set("M", m);
            wset_grid(field, d, m)
        }
        (Some(omega), _, _) => {
            let mut mons = Vec::new();
            let mut deg = 0;
            while mons.len() < omega {
                mons = monomials_upto(deg);
                deg += 1;
            }
            mons.truncate(omega);
            let forms = mons.into_iter().map(|(i, j)| BivarPoly::monomial(i, j, Poly::one(field))).collect();
            WSet::new(forms)?
        }
        _ => return Err(CliError::Input("give --omega, or --d with --M".into())),
    };
    p.set("omega", w.omega());
    p.set("W", w.forms().iter().map(|f| f.to_string()).collect::<Vec<_>>());
    Ok(w)
}

fn points_json(pts: &[Point]) -> Value {
    pts.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect()
}

pub fn execute(cmd: &Command) -> CResult<Outcome> {
    match cmd {
        Command::CountBox(a) => count_box(a),
        Command::ExponentScan(a) => exponent_scan(a),
        Command::ResidueStats(a) => residue(a),
        Command::Detlab(Detlab::Ord(a)) => ord(a),
        Command::Detlab(Detlab::MeanIdentity(a)) => mean_identity(a),
        Command::Detlab(Detlab::Interpolate(a)) => interpolate(a),
        Command::Detlab(Detlab::WcurveMax(a)) => wcurve_max(a),
        Command::Ec(Ec::Nlambda(a)) => nlambda(a),
        Command::Ec(Ec::Census(a)) => census(a),
        Command::Ec(Ec::Scan19(a)) => scan19(a),
        Command::Ec(Ec::Pigeonhole(a)) => pigeonhole(a),
        Command::Ec(Ec::Extremal(a)) => extremal(a),
        Command::Replay(_) => unreachable!("replay is resolved before execution"),
    }
}

fn count_box(a: &CountBoxArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let g = curve_arg(&a.curve, &field)?;
    let bx = square_box(&field, a.n, &a.base)?;
    p.set("curve", g.to_string());
    p.set("n", a.n);
    p.set("base_x", bx.x.base().to_string());
    p.set("base_y", bx.y.base().to_string());
    let s = enumerate_box_points(&g, &bx)?;
    let mut table = Table::new(&["x", "y"]);
    for (x, y) in s.points() {
        table.push(vec![x.to_string(), y.to_string()]);
    }
    Ok(Outcome {
        result: json!({
            "size_I": bx.x.size(),
            "count": s.len(),
            "points": points_json(s.points()),
        }),
        params: p.0,
        table,
        pass: true,
    })
}

fn exponent_scan(a: &ExponentScanArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let g = curve_arg(&a.curve, &field)?;
    let bx = poly_arg("base-x", &a.base.base_x, &field)?;
    let by = poly_arg("base-y", &a.base.base_y, &field)?;
    p.set("curve", g.to_string());
    p.set("n_range", json!([a.n_range.start(), a.n_range.end()]));
    p.set("base_x", bx.to_string());
    p.set("base_y", by.to_string());
    let rows = exponent_scan_based(&g, &bx, &by, a.n_range.clone())?;
    let mut table = Table::new(&["n", "size_I", "count", "exponent"]);
    let mut json_rows = Vec::new();
    for r in &rows {
        table.push(vec![r.n.to_string(), r.size_i.to_string(), r.count.to_string(), fmt_f64(r.exponent)]);
        json_rows.push(json!({ "n": r.n, "size_I": r.size_i, "count": r.count, "exponent": r.exponent }));
    }
    Ok(Outcome {
        result: json!({ "rows": json_rows, "fitted_slope": fitted_slope(&rows) }),
        params: p.0,
        table,
        pass: true,
    })
}

fn residue(a: &ResidueStatsArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let g = curve_arg(&a.curve, &field)?;
    let bx = square_box(&field, a.n, &a.base)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    p.set("curve", g.to_string());
    p.set("n", a.n);
    p.set("base_x", bx.x.base().to_string());
    p.set("base_y", bx.y.base().to_string());
    p.set("f", f.to_string());
    let s = enumerate_box_points(&g, &bx)?;
    let prof = residue_stats(&s, &f)?;
    let mut table = Table::new(&["x", "y", "count"]);
    for ((x, y), c) in &prof.counts {
        table.push(vec![x.to_string(), y.to_string(), c.to_string()]);
    }
    let pass = prof.cauchy_holds();
    let bound = num_rational::BigRational::from_integer(1.into())
        / (prof.alpha() * num_rational::BigRational::from_integer(prof.norm.clone().into()));
    Ok(Outcome {
        result: json!({
            "norm_f": prof.norm.to_string(),
            "total": prof.total,
            "distinct": prof.distinct(),
            "alpha": prof.alpha().to_string(),
            "sum_rho_squared": prof.sum_rho_squared().to_string(),
            "cauchy_bound": bound.to_string(),
            "pass": pass,
        }),
        params: p.0,
        table,
        pass,
    })
}

fn ord(a: &OrdArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let s = point_set(&a.set, &field, &mut p)?;
    let w = w_set(&a.w, &field, &mut p)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    let budget = a.budget.unwrap_or(DEFAULT_TUPLE_BUDGET);
    p.set("f", f.to_string());
    p.set("budget", budget.to_string());
    let r = verify_ord_inequality(&w, &s, &f, budget)?;
    let mut table = Table::new(&["omega", "d_W", "tuples_total", "tuples_admissible", "sum_ord", "sum_kappa", "pass"]);
    table.push(vec![
        r.omega.to_string(),
        r.d_w.to_string(),
        r.tuples_total.to_string(),
        r.tuples_admissible.to_string(),
        r.sum_ord.to_string(),
        r.sum_kappa.to_string(),
        r.pass.to_string(),
    ]);
    let mut result = serde_json::to_value(&r).expect("serializable");
    result["size_S"] = s.len().into();
    result["S"] = points_json(s.points());
    Ok(Outcome {
        params: p.0,
        result,
        table,
        pass: r.pass,
    })
}

fn mean_identity(a: &MeanIdentityArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let s = point_set(&a.set, &field, &mut p)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    let budget = a.budget.unwrap_or(DEFAULT_TUPLE_BUDGET);
    p.set("omega", a.omega);
    p.set("f", f.to_string());
    p.set("budget", budget.to_string());
    let r = mean_distinct_identity(&s, &f, a.omega, budget)?;
    let mut table = Table::new(&["omega", "tuples_total", "lhs", "rhs", "pass"]);
    table.push(vec![
        r.omega.to_string(),
        r.tuples_total.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.pass.to_string(),
    ]);
    Ok(Outcome {
        params: p.0,
        result: serde_json::to_value(&r).expect("serializable"),
        table,
        pass: r.pass,
    })
}

fn interpolate(a: &InterpolateArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let s = point_set(&a.set, &field, &mut p)?;
    p.set("d", a.d);
    let g = interpolate_form(&field, s.points(), a.d)?;
    let pass = s.points().iter().all(|(x, y)| g.evaluate(x, y).is_zero());
    let mut table = Table::new(&["i", "j", "coeff"]);
    for (&(i, j), c) in g.terms().iter().rev() {
        table.push(vec![i.to_string(), j.to_string(), c.to_string()]);
    }
    Ok(Outcome {
        params: p.0,
        result: json!({
            "r_d": r_of(a.d),
            "n_d": n_of(a.d),
            "size_S": s.len(),
            "G": g.to_string(),
            "vanishes": pass,
        }),
        table,
        pass,
    })
}

fn wcurve_max(a: &WcurveMaxArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let s = point_set(&a.set, &field, &mut p)?;
    let w = w_set(&a.w, &field, &mut p)?;
    let budget = a.budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    p.set("budget", budget.to_string());
    let r = max_points_on_wcurve(&w, &s, budget)?;
    let mut table = Table::new(&["omega", "size_S", "max", "subsets_examined", "exhausted"]);
    table.push(vec![
        w.omega().to_string(),
        s.len().to_string(),
        r.max.to_string(),
        r.subsets_examined.to_string(),
        r.exhausted.to_string(),
    ]);
    let mut result = serde_json::to_value(&r).expect("serializable");
    result["omega"] = w.omega().into();
    result["size_S"] = s.len().into();
    Ok(Outcome {
        params: p.0,
        result,
        table,
        pass: true,
    })
}

fn interval(field: &Field, base: &str, n: u32, p: &mut Params) -> CResult<Interval> {
    let b = poly_arg("base-x", base, field)?;
    p.set("n", n);
    p.set("base_x", b.to_string());
    Ok(Interval::new(b, n)?)
}

fn nlambda(a: &NlambdaArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let i = interval(&field, &a.base, a.n, &mut p)?;
    let lambda = poly_arg("lambda", &a.lambda, &field)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    p.set("lambda", lambda.to_string());
    p.set("f", f.to_string());
    let count = count_n_lambda(&i, &lambda, &f)?;
    let mut table = Table::new(&["lambda", "count"]);
    table.push(vec![lambda.to_string(), count.to_string()]);
    Ok(Outcome {
        params: p.0,
        result: json!({ "size_I": i.size(), "norm_f": f.norm().to_string(), "count": count }),
        table,
        pass: true,
    })
}

fn census(a: &CensusArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let i = interval(&field, &a.base, a.n, &mut p)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    p.set("f", f.to_string());
    let n = count_n(&i, &f)?;
    let mut table = Table::new(&["size_I", "norm_f", "N"]);
    table.push(vec![i.size().to_string(), f.norm().to_string(), n.to_string()]);
    Ok(Outcome {
        params: p.0,
        result: json!({ "size_I": i.size(), "norm_f": f.norm().to_string(), "N": n }),
        table,
        pass: true,
    })
}

fn scan19(a: &Scan19Args) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let i = interval(&field, &a.base, a.n, &mut p)?;
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    p.set("f", f.to_string());
    p.set("force", a.force);
    let r = theorem19_scan(&i, &f, a.force)?;
    let mut table = Table::new(&["lambda", "count"]);
    for (l, c) in &r.rows {
        table.push(vec![l.to_string(), c.to_string()]);
    }
    Ok(Outcome {
        params: p.0,
        result: serde_json::to_value(&r).expect("serializable"),
        table,
        pass: true,
    })
}

fn pigeonhole(a: &PigeonholeArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    let f = modulus_of(&a.modulus, &field, a.common.seed)?;
    p.set("f", f.to_string());
    if let Some(lambda) = &a.lambda {
        let lambda = poly_arg("lambda", lambda, &field)?;
        let x0 = poly_arg("base-x", &a.base, &field)?;
        let n = a.n.expect("clap enforces --n with --lambda");
        let m = f.degree().unwrap_or(0) as u32;
        let plan = TauPlan::default_for(m, n);
        p.set("lambda", lambda.to_string());
        p.set("base_x", x0.to_string());
        p.set("n", n);
        let model = small_coeff_model(&lambda, &x0, &f, &plan)?;
        let inst = PigeonInstance::new(f.clone(), model.xs[..5].to_vec(), plan.taus.to_vec())?;
        let pass = inst.verify(&model.t);
        let mut table = Table::new(&["i", "x_i", "f_i"]);
        for (k, (x, fi)) in model.xs.iter().zip(&model.fs).enumerate() {
            table.push(vec![(k + 1).to_string(), x.to_string(), fi.to_string()]);
        }
        let mut result = serde_json::to_value(&model).expect("serializable");
        result["verified"] = pass.into();
        return Ok(Outcome {
            params: p.0,
            result,
            table,
            pass,
        });
    }
    let xs = a
        .xs
        .iter()
        .map(|x| poly_arg("x", x, &field))
        .collect::<CResult<Vec<Poly>>>()?;
    p.set("x", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    p.set("tau", a.taus.clone());
    let inst = PigeonInstance::new(f, xs, a.taus.clone())?;
    let t = solve_pigeonhole(&inst)?;
    let pass = t.as_ref().is_none_or(|t| inst.verify(t));
    let mut table = Table::new(&["i", "x_i", "tau_i", "residue"]);
    for (k, (x, tau)) in inst.xs.iter().zip(&inst.taus).enumerate() {
        let r = match &t {
            Some(t) => (x * t).rem(&inst.f)?.to_string(),
            None => String::new(),
        };
        table.push(vec![(k + 1).to_string(), x.to_string(), tau.to_string(), r]);
    }
    let sum: u64 = inst.taus.iter().map(|&t| t as u64).sum();
    Ok(Outcome {
        params: p.0,
        result: json!({
            "m": inst.m(),
            "sum_tau": sum,
            "guaranteed": sum > (inst.xs.len() as u64 - 1) * inst.m() as u64,
            "t": t.as_ref().map(|t| t.to_string()),
            "verified": pass,
        }),
        table,
        pass,
    })
}

fn extremal(a: &ExtremalArgs) -> CResult<Outcome> {
    let field = field_of(&a.field)?;
    let mut p = Params::new(&field);
    p.set("n", a.n);
    let i = Interval::centered(&field, a.n)?;
    let ws = extremal_witnesses(&i)?;
    let expected = (field.q() as u64).pow(a.n / 3 + 1);
    let mut table = Table::new(&["x", "a", "b"]);
    for x in &ws {
        table.push(vec![x.to_string(), x.pow(2).to_string(), x.pow(3).to_string()]);
    }
    let pass = ws.len() as u64 == expected;
    Ok(Outcome {
        params: p.0,
        result: json!({
            "size_I": i.size(),
            "count": ws.len(),
            "expected": expected,
            "witnesses": ws.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "pass": pass,
        }),
        table,
        pass,
    })
}
