//! Built-in worked examples, each run as a named pass/fail check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;

use cremona_core::cremona::{free_intersection_same_labels, make_h_element, make_linear_g, make_phi};
use cremona_core::jonquieres::{hyperelliptic_curve, leminv_check, JonqElement, PglOrder};
use cremona_core::linsys::{adjoint_chain, Classification, LinSys, RemovedComponent};
use cremona_core::pencil::{enumerate_pencil_types, node_assignments, sextic_free_intersection_bound};
use cremona_core::{PlaneCurveModel, RatFunc, Rational, TriHomPoly, UniPoly};

use crate::{Ctx, Report};

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub name: &'static str,
    /// What the entry reproduces.
    pub reproduces: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sys(n: i64, m: &[i64]) -> LinSys {
    LinSys::numeric(n, m).expect("valid system")
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn chain_of(d: u32, m: &[u32]) -> Result<cremona_core::ChainReport, String> {
    let c = PlaneCurveModel::numeric(d, m).map_err(|e| e.to_string())?;
    adjoint_chain(&c).map_err(|e| e.to_string())
}

fn hyperelliptic_chains() -> Outcome {
    for g in 2..=6u32 {
        let r = chain_of(g + 2, &[g])?;
        let gi = g as i64;
        need(r.steps.len() == 1 && r.steps[0].raw == sys(gi - 1, &[gi - 1]), || {
            format!("g = {g}: adjoint {}", r.steps[0].raw)
        })?;
        need(
            r.terminal == sys(1, &[1]) && r.classification == Classification::RationalPencil,
            || format!("g = {g}: {} {}", r.terminal, r.classification),
        )?;
    }
    Ok("g = 2..6: adjoint (g-1; g-1) = (g-1)(1; 1), rational pencil".into())
}

fn two_triple_points() -> Outcome {
    let r = chain_of(6, &[3, 3])?;
    let s = &r.steps[0];
    need(s.raw == sys(3, &[2, 2]), || format!("adjoint {}", s.raw))?;
    need(
        s.removed.len() == 1
            && s.removed[0].component == RemovedComponent::Line(["p1".into(), "p2".into()]),
        || format!("removed {:?}", s.removed),
    )?;
    need(r.terminal == sys(2, &[1, 1]), || format!("terminal {}", r.terminal))?;
    Ok("(3; 2,2) minus line pq = (2; 1,1)".into())
}

fn geiser() -> Outcome {
    let c = PlaneCurveModel::numeric(6, &[2; 7]).map_err(|e| e.to_string())?;
    need(c.genus() == 3, || format!("genus {}", c.genus()))?;
    let r = chain_of(6, &[2; 7])?;
    need(
        r.terminal == sys(3, &[1; 7]) && r.classification == Classification::EllipticNet,
        || format!("{} {}", r.terminal, r.classification),
    )?;
    let fi = free_intersection_same_labels(&r.terminal, &sys(6, &[2; 7]));
    need(fi == 4, || format!("free intersection {fi}"))?;
    Ok("genus 3; net (3; 1^7); cubic meets sextic in 4 free points".into())
}

fn bertini() -> Outcome {
    let c = PlaneCurveModel::numeric(9, &[3; 8]).map_err(|e| e.to_string())?;
    need(c.genus() == 4, || format!("genus {}", c.genus()))?;
    let r = chain_of(9, &[3; 8])?;
    let outs: Vec<String> = r.steps.iter().map(|s| s.output().to_string()).collect();
    need(
        r.steps.len() == 2
            && r.steps[0].output() == &sys(6, &[2; 8])
            && r.terminal == sys(3, &[1; 8])
            && r.classification == Classification::EllipticPencil,
        || format!("{outs:?} {}", r.classification),
    )?;
    Ok("genus 4; (6; 2^8) then the pencil (3; 1^8)".into())
}

fn covariance() -> Outcome {
    let mut n = 0;
    for l in [sys(6, &[2; 7]), sys(9, &[3; 8])] {
        let labels: Vec<&String> = l.mults().keys().collect();
        let step = l.adjoint_step().map_err(|e| e.to_string())?;
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                for k in j + 1..labels.len() {
                    let base = [labels[i].as_str(), labels[j].as_str(), labels[k].as_str()];
                    let lhs = step.output().quadratic_transform(base).map_err(|e| e.to_string())?;
                    let t = l.quadratic_transform(base).map_err(|e| e.to_string())?;
                    let rhs = t.adjoint_step().map_err(|e| e.to_string())?;
                    need(lhs.equivalent_up_to_labels(rhs.output()), || {
                        format!("{l} at {base:?}")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} base triples"))
}

fn torus_elements() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let h = UniPoly::from_i64s(&[1, 1, 0, 0, 0, 0, 1]);
    let curve = hyperelliptic_curve(&h).map_err(|e| e.to_string())?;
    let rnd = |rng: &mut ChaCha8Rng| {
        let c: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-3..=3)).collect();
        RatFunc::from_poly(UniPoly::from_i64s(&c))
    };
    let mut done = 0;
    let mut maps = 0;
    while done < 20 {
        let mut a1 = rnd(&mut rng);
        let a2 = rnd(&mut rng);
        if done % 5 == 0 {
            a1 = RatFunc::zero();
        }
        let Ok(u) = JonqElement::new(h.clone(), a1, a2) else {
            continue;
        };
        need(u.fixes_hyperelliptic(), || format!("{u}: identity fails"))?;
        let r = leminv_check(&u);
        need(r.satisfied, || format!("{u}: order {}", r.order))?;
        if done < 5 {
            let m = u.to_cremona();
            need(m.fixes_curve_pointwise(&curve).map_err(|e| e.to_string())?, || {
                format!("{u}: map moves the curve")
            })?;
            maps += 1;
        }
        done += 1;
    }
    Ok(format!("20 elements over h = x^6+x+1 fix y^2 = h; {maps} maps checked"))
}

fn jonquieres_involution() -> Outcome {
    let h = UniPoly::from_i64s(&[-1, 0, 0, 0, 1]);
    let u = JonqElement::new(h.clone(), RatFunc::zero(), RatFunc::one()).map_err(|e| e.to_string())?;
    need(u.order() == PglOrder::Two, || format!("order {}", u.order()))?;
    let m = u.to_cremona();
    need(m.compose(&m).map_err(|e| e.to_string())?.is_identity(), || "not an involution".into())?;
    let c = hyperelliptic_curve(&h).map_err(|e| e.to_string())?;
    need(m.fixes_curve_pointwise(&c).map_err(|e| e.to_string())?, || "curve moved".into())?;
    Ok(format!("y -> h(x)/y is {m}"))
}

fn quadratic_involutions() -> Outcome {
    let line = TriHomPoly::x();
    for (mu, nu) in [(q(1, 1), q(0, 1)), (q(0, 1), q(1, 1)), (q(2, 3), q(-5, 2)), (q(-1, 1), q(7, 1))] {
        let p = make_phi(&mu, &nu).map_err(|e| e.to_string())?;
        need(p.compose(&p).map_err(|e| e.to_string())?.is_identity(), || {
            format!("phi({mu}, {nu}) is not an involution")
        })?;
        need(p.fixes_curve_pointwise(&line).map_err(|e| e.to_string())?, || {
            format!("phi({mu}, {nu}) moves x = 0")
        })?;
    }
    Ok("4 parameter pairs".into())
}

fn g_and_h() -> Outcome {
    let line = TriHomPoly::x();
    let g = make_linear_g(q(2, 1), q(1, 1), q(0, 1)).map_err(|e| e.to_string())?;
    let h = make_h_element(RatFunc::one(), RatFunc::one()).map_err(|e| e.to_string())?;
    need(g.fixes_curve_pointwise(&line).unwrap_or(false), || "G moves x = 0".into())?;
    need(h.fixes_curve_pointwise(&line).unwrap_or(false), || "H moves x = 0".into())?;
    let gh = g.compose(&h).map_err(|e| e.to_string())?;
    let hg = h.compose(&g).map_err(|e| e.to_string())?;
    need(gh != hg, || "G and H commute".into())?;
    Ok(format!("GH = {gh} differs from HG = {hg}"))
}

fn pencil_lemma() -> Outcome {
    let types = enumerate_pencil_types(6, 8).map_err(|e| e.to_string())?;
    let mut min = i64::MAX;
    for p in &types {
        need(p.report().residuals.eq3 == 0, || format!("{p}"))?;
        for a in node_assignments(p) {
            let b = sextic_free_intersection_bound(p, &a).map_err(|e| e.to_string())?;
            need(b >= 4, || format!("{p} at {a:?}: {b}"))?;
            min = min.min(b);
        }
    }
    need(min == 4, || format!("minimum {min}"))?;
    Ok(format!("{} types up to degree 6, free intersection >= 4", types.len()))
}

pub fn run_corpus() -> Vec<Entry> {
    type Case = (&'static str, &'static str, fn() -> Outcome);
    let entries: [Case; 11] = [
        ("hyperelliptic", "curve (g+2; g): adjoint is composed with the lines through the g-fold point", hyperelliptic_chains),
        ("two-triple-point-sextic", "sextic with two triple points: fixed line pq, conics through p and q", two_triple_points),
        ("geiser", "Geiser involution: fixed sextic with 7 nodes, net of cubics", geiser),
        ("bertini", "Bertini involution: fixed nonic with 8 triple points, pencil of cubics as second adjoint", bertini),
        ("covariance", "adjoints commute with quadratic transformations", covariance),
        ("torus", "de Jonquieres torus T_h fixes y^2 = h(x); finite orders are 1 or 2", torus_elements),
        ("jonquieres-involution", "a1 = 0 gives the de Jonquieres involution", jonquieres_involution),
        ("quadratic-involutions", "phi_{mu,nu} is an involution fixing the line x = 0", quadratic_involutions),
        ("g-and-h", "groups G and H fix x = 0 and do not commute", g_and_h),
        ("pencil-lemma", "rational pencils meet a rational nodal sextic in at least 4 free points", pencil_lemma),
        ("genus-values", "Geiser sextic has genus 3, Bertini nonic genus 4", || {
            let g1 = PlaneCurveModel::numeric(6, &[2; 7]).map_err(|e| e.to_string())?.genus();
            let g2 = PlaneCurveModel::numeric(9, &[3; 8]).map_err(|e| e.to_string())?.genus();
            need(g1 == 3 && g2 == 4, || format!("{g1}, {g2}"))?;
            Ok("3 and 4".into())
        }),
    ];
    entries
        .into_iter()
        .map(|(name, reproduces, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Entry { name, reproduces, passed, detail }
        })
        .collect()
}

pub(crate) fn report(ctx: &mut Ctx) -> Report {
    let entries = run_corpus();
    let failed = entries.iter().filter(|e| !e.passed).count();
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(
            text,
            "{}  {:<24} {}",
            if e.passed { "PASS" } else { "FAIL" },
            e.name,
            e.reproduces
        );
        if !e.passed || ctx.verbose > 0 {
            let _ = writeln!(text, "      {}", e.detail);
        }
    }
    let _ = writeln!(text, "{} passed, {failed} failed", entries.len() - failed);
    Report {
        json: json!({ "passed": failed == 0, "failed": failed, "entries": entries }),
        text,
        ok: failed == 0,
    }
}
