use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Read;

use cremona_core::cremona::CremonaMap;
use cremona_core::jonquieres::{hyperelliptic_curve, leminv_check, pgl_lambda, pgl_order, JonqElement};
use cremona_core::linsys::{adjoint_chain, ChainReport, LinSys};
use cremona_core::pencil::{
    check_rational_pencil, enumerate_pencil_types, sextic_free_intersection_bound, PencilType,
};
use cremona_core::{CurveData, Mat2RF, PlaneCurveModel, TriHomPoly};

use crate::{corpus, parse, CliError, Command, Ctx, Report};

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

pub(crate) fn dispatch(cmd: &Command, stdin: &mut dyn Read, ctx: &mut Ctx) -> Result<Report, CliError> {
    match cmd {
        Command::Genus(i) => genus(&i.read(stdin)?, ctx),
        Command::Validate(i) => validate(&i.read(stdin)?, ctx),
        Command::AdjointChain(i) => chain(&i.read(stdin)?, ctx),
        Command::Classify(i) => classify(&i.read(stdin)?, ctx),
        Command::MapCompose(i) => map_compose(&i.read(stdin)?, ctx),
        Command::MapFixcheck(i) => map_fixcheck(&i.read(stdin)?, ctx),
        Command::JonqOrder(i) => jonq_order(&i.read(stdin)?),
        Command::JonqMul(i) => jonq_mul(&i.read(stdin)?),
        Command::JonqFixCheck(i) => jonq_fix_check(&i.read(stdin)?, ctx),
        Command::PencilCheck { n, mults, nodes } => pencil_check(*n, mults, nodes.as_deref()),
        Command::PencilEnum { max, bound } => pencil_enum(*max, *bound),
        Command::Examples => Ok(corpus::report(ctx)),
    }
}

fn check_poly_degree(what: &str, d: u32, ctx: &Ctx) -> Result<(), CliError> {
    if d > ctx.max_degree {
        return Err(CliError::Invalid(format!(
            "{what} has degree {d}, above the cap {} (set {})",
            ctx.max_degree,
            crate::MAX_DEGREE_VAR
        )));
    }
    Ok(())
}

fn curve_model(data: &CurveData, ctx: &Ctx) -> Result<PlaneCurveModel, CliError> {
    if let Some(p) = &data.poly {
        check_poly_degree("defining polynomial", p.degree(), ctx)?;
    }
    PlaneCurveModel::try_from(data).map_err(|e| CliError::Invalid(e.to_string()))
}

fn genus(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let data: CurveData = parse(src)?;
    let c = curve_model(&data, ctx)?;
    let g = c.genus();
    Ok(Report {
        json: json!({ "degree": c.degree(), "genus": g }),
        text: format!("genus {g}\n"),
        ok: true,
    })
}

fn validate(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let data: CurveData = parse(src)?;
    if let Some(p) = &data.poly {
        check_poly_degree("defining polynomial", p.degree(), ctx)?;
    }
    let r = data.validate();
    let mut text = String::new();
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{mark}  {}{}", c.name, c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default());
    }
    let _ = writeln!(text, "genus {}: {}", r.genus, if r.passed { "valid" } else { "invalid" });
    Ok(Report {
        json: to_json(&r),
        ok: r.passed,
        text,
    })
}

fn chain_text(r: &ChainReport) -> String {
    let mut t = String::new();
    for (i, s) in r.steps.iter().enumerate() {
        let _ = write!(t, "step {}: {} -> adjoint {}", i + 1, s.input, s.raw);
        for rm in &s.removed {
            let _ = write!(t, " - {}x {}", rm.count, component_text(&rm.component));
        }
        if let Some(p) = &s.pencil {
            let _ = write!(t, " = {} * {}", p.content, p.pencil);
        } else if !s.removed.is_empty() {
            let _ = write!(t, " = {}", s.reduced);
        }
        t.push('\n');
    }
    let _ = writeln!(
        t,
        "terminal {} (genus {}, dim {}): {}",
        r.terminal,
        r.terminal.member_genus(),
        r.terminal.virtual_dim(),
        r.classification
    );
    for w in &r.warnings {
        let _ = writeln!(t, "warning: {w}");
    }
    t
}

fn component_text(c: &cremona_core::RemovedComponent) -> String {
    match c {
        cremona_core::RemovedComponent::Line(t) => format!("line {}", t.join("")),
        cremona_core::RemovedComponent::Conic(t) => format!("conic {}", t.join("")),
    }
}

fn chain(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let data: CurveData = parse(src)?;
    let c = curve_model(&data, ctx)?;
    let r = adjoint_chain(&c).map_err(|e| CliError::Invalid(e.to_string()))?;
    for w in &r.warnings {
        ctx.note(0, format!("warning: {w}"));
    }
    Ok(Report {
        json: to_json(&r),
        text: chain_text(&r),
        ok: true,
    })
}

fn classify(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let value: Value = parse(src)?;
    let r = if value.get("mults").is_some() {
        let l: LinSys = parse(src)?;
        l.chain()
    } else {
        let data: CurveData = parse(src)?;
        adjoint_chain(&curve_model(&data, ctx)?)
    }
    .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Report {
        json: json!({
            "class": r.classification,
            "terminal": r.terminal,
            "steps": r.steps.len(),
            "warnings": r.warnings,
        }),
        text: format!("{} after {} step(s): {}\n", r.classification, r.steps.len(), r.terminal),
        ok: true,
    })
}

#[derive(Deserialize)]
struct ComposeInput {
    maps: Vec<CremonaMap>,
}

fn map_text(m: &CremonaMap, identity: bool) -> String {
    format!(
        "degree {}: {}{}\n",
        m.degree(),
        m,
        if identity { "  [identity]" } else { "" }
    )
}

fn map_compose(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let input: ComposeInput = parse(src)?;
    let mut maps = input.maps.into_iter();
    let first = maps
        .next()
        .ok_or_else(|| CliError::Invalid("`maps` is empty".into()))?;
    check_poly_degree("map", first.degree(), ctx)?;
    let mut acc = first;
    for m in maps {
        check_poly_degree("composition", acc.degree() * m.degree(), ctx)?;
        acc = acc.compose(&m).map_err(|e| CliError::Invalid(e.to_string()))?;
        ctx.note(2, format!("intermediate degree {}", acc.degree()));
    }
    let identity = acc.is_identity();
    let mut json = to_json(&acc);
    json["is_identity"] = json!(identity);
    Ok(Report {
        text: map_text(&acc, identity),
        json,
        ok: true,
    })
}

#[derive(Deserialize)]
struct FixInput {
    map: CremonaMap,
    curve: TriHomPoly,
}

fn map_fixcheck(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let input: FixInput = parse(src)?;
    check_poly_degree("map", input.map.degree(), ctx)?;
    check_poly_degree("curve", input.curve.degree(), ctx)?;
    let fixes = input
        .map
        .fixes_curve_pointwise(&input.curve)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Report {
        json: json!({ "fixes": fixes }),
        text: format!("fixes pointwise: {}\n", if fixes { "yes" } else { "no" }),
        ok: fixes,
    })
}

#[derive(Deserialize)]
struct MatrixInput {
    matrix: Mat2RF,
}

fn jonq_order(src: &str) -> Result<Report, CliError> {
    let value: Value = parse(src)?;
    if value.get("matrix").is_some() {
        let m: MatrixInput = parse(src)?;
        let order = pgl_order(&m.matrix).map_err(|e| CliError::Invalid(e.to_string()))?;
        let lambda = pgl_lambda(&m.matrix);
        return Ok(Report {
            text: format!("order {order} (lambda = {lambda})\n"),
            json: json!({ "order": order, "lambda": lambda }),
            ok: true,
        });
    }
    let u: JonqElement = parse(src)?;
    let r = leminv_check(&u);
    Ok(Report {
        text: format!(
            "order {} (lambda = {}); lemma {}\n",
            r.order,
            r.lambda,
            if r.satisfied { "holds" } else { "FAILS" }
        ),
        json: json!({ "order": r.order, "lambda": r.lambda, "lemma": r }),
        ok: r.satisfied,
    })
}

#[derive(Deserialize)]
struct MulInput {
    u: JonqElement,
    v: JonqElement,
}

fn jonq_mul(src: &str) -> Result<Report, CliError> {
    let input: MulInput = parse(src)?;
    let p = input.u.mul(&input.v).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Report {
        text: format!("{p}\n"),
        json: to_json(&p),
        ok: true,
    })
}

fn jonq_fix_check(src: &str, ctx: &mut Ctx) -> Result<Report, CliError> {
    let u: JonqElement = parse(src)?;
    let identity = u.fixes_hyperelliptic();
    let m = u.to_cremona();
    let map_fixes = if m.degree() <= ctx.max_degree {
        let c = hyperelliptic_curve(u.h()).map_err(|e| CliError::Invalid(e.to_string()))?;
        Some(m.fixes_curve_pointwise(&c).map_err(|e| CliError::Invalid(e.to_string()))?)
    } else {
        ctx.note(0, format!("map degree {} above cap {}; map check skipped", m.degree(), ctx.max_degree));
        None
    };
    let ok = identity && map_fixes != Some(false);
    let yn = |b: bool| if b { "yes" } else { "no" };
    Ok(Report {
        json: json!({
            "identity_holds": identity,
            "map_degree": m.degree(),
            "map_fixes_curve": map_fixes,
        }),
        text: format!(
            "identity holds: {}\nmap of degree {} fixes the curve: {}\n",
            yn(identity),
            m.degree(),
            map_fixes.map_or("skipped", yn)
        ),
        ok,
    })
}

fn pencil_check(n: i64, mults: &[i64], nodes: Option<&[i64]>) -> Result<Report, CliError> {
    let r = check_rational_pencil(n, mults).map_err(|e| CliError::Input(e.to_string()))?;
    let mut json = to_json(&r);
    let mut text = format!(
        "residuals: eq1 {}, eq2 {}, eq3 {}: {}\n",
        r.residuals.eq1,
        r.residuals.eq2,
        r.residuals.eq3,
        if r.valid { "valid" } else { "invalid" }
    );
    if let Some(nodes) = nodes {
        let p = PencilType::new(n, mults.to_vec()).expect("checked above");
        let b = sextic_free_intersection_bound(&p, nodes).map_err(|e| CliError::Invalid(e.to_string()))?;
        json["sextic_free_intersection"] = json!(b);
        let _ = writeln!(text, "free intersection with the sextic: {b}");
    }
    Ok(Report { json, text, ok: r.valid })
}

fn pencil_enum(max: i64, bound: i64) -> Result<Report, CliError> {
    let types = enumerate_pencil_types(max, bound).map_err(|e| CliError::Invalid(e.to_string()))?;
    let text = types.iter().map(|p| format!("({p})\n")).collect();
    Ok(Report {
        json: json!({ "n_max": max, "count": types.len(), "types": types }),
        text,
        ok: true,
    })
}
