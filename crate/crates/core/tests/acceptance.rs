//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cremona_core::cremona::{make_h_element, make_linear_g, make_phi, HElement, LinearG};
use cremona_core::jonquieres::{hyperelliptic_curve, leminv_check, JonqElement, PglOrder};
use cremona_core::linsys::{adjoint_chain, adjoint_raw, Classification, LinSys, RemovedComponent};
use cremona_core::pencil::{
    enumerate_pencil_types, node_assignments, sextic_free_intersection_bound, PencilType,
    DEFAULT_ENUM_BOUND,
};
use cremona_core::{PlaneCurveModel, RatFunc, Rational, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sys(n: i64, m: &[i64]) -> LinSys {
    LinSys::numeric(n, m).unwrap()
}

fn curve(d: u32, m: &[u32]) -> PlaneCurveModel {
    PlaneCurveModel::numeric(d, m).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn c1_example_chains() -> Check {
    let start = Instant::now();
    for g in 2..=6u32 {
        let r = adjoint_chain(&curve(g + 2, &[g])).map_err(|e| e.to_string())?;
        let gi = g as i64;
        ensure(r.steps.len() == 1, || format!("({};{g}): {} steps", g + 2, r.steps.len()))?;
        ensure(r.steps[0].raw == sys(gi - 1, &[gi - 1]), || {
            format!("({};{g}): raw adjoint {}", g + 2, r.steps[0].raw)
        })?;
        let content = r.steps[0].pencil.as_ref().map_or(1, |p| p.content);
        ensure(content == gi - 1, || format!("({};{g}): content {content}", g + 2))?;
        ensure(r.terminal == sys(1, &[1]), || format!("({};{g}): terminal {}", g + 2, r.terminal))?;
        ensure(r.classification == Classification::RationalPencil, || {
            format!("({};{g}): class {}", g + 2, r.classification)
        })?;
    }

    let r = adjoint_chain(&curve(6, &[3, 3])).map_err(|e| e.to_string())?;
    let removed = &r.steps[0].removed;
    ensure(
        removed.len() == 1
            && removed[0].count == 1
            && removed[0].component == RemovedComponent::Line(["p1".into(), "p2".into()]),
        || format!("(6;3,3): removed {removed:?}"),
    )?;
    ensure(r.terminal == sys(2, &[1, 1]), || format!("(6;3,3): terminal {}", r.terminal))?;

    let r = adjoint_chain(&curve(6, &[2; 7])).map_err(|e| e.to_string())?;
    ensure(
        r.terminal == sys(3, &[1; 7])
            && r.terminal.member_genus() == 1
            && r.terminal.virtual_dim() == 2
            && r.classification == Classification::EllipticNet,
        || format!("(6;2^7): {} {}", r.terminal, r.classification),
    )?;

    let r = adjoint_chain(&curve(9, &[3; 8])).map_err(|e| e.to_string())?;
    let outs: Vec<LinSys> = r.steps.iter().map(|s| s.output().clone()).collect();
    ensure(
        outs == vec![sys(6, &[2; 8]), sys(3, &[1; 8])]
            && r.classification == Classification::EllipticPencil,
        || format!("(9;3^8): {outs:?} {}", r.classification),
    )?;

    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("8 chains exact in {} ms", t.as_millis()))
}

fn c2_canonical_dimension() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut tested = 0;
    let mut tries = 0;
    while tested < 500 {
        tries += 1;
        let d: u32 = rng.gen_range(3..=15);
        let k = rng.gen_range(0..=9);
        let mults: Vec<u32> = (0..k).map(|_| rng.gen_range(2..=d)).collect();
        let Ok(c) = PlaneCurveModel::numeric(d, &mults) else {
            continue;
        };
        let g = c.genus();
        if g <= 1 {
            continue;
        }
        let a = adjoint_raw(&c).map_err(|e| e.to_string())?;
        ensure(a.virtual_dim() == g - 1, || {
            format!("({d};{mults:?}): dim {} vs genus {g}", a.virtual_dim())
        })?;
        tested += 1;
    }
    Ok(format!("500 models (from {tries} draws)"))
}

fn triples(labels: &[String]) -> Vec<[&str; 3]> {
    let mut out = vec![];
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            for k in j + 1..labels.len() {
                out.push([labels[i].as_str(), labels[j].as_str(), labels[k].as_str()]);
            }
        }
    }
    out
}

fn c3_covariance() -> Check {
    let mut checked = 0;
    for l in [sys(6, &[2; 7]), sys(9, &[3; 8])] {
        let labels: Vec<String> = l.mults().keys().cloned().collect();
        let step = l.adjoint_step().map_err(|e| e.to_string())?;
        for base in triples(&labels) {
            let Ok(tl) = l.quadratic_transform(base) else {
                continue;
            };
            let Ok(lhs) = step.output().quadratic_transform(base) else {
                return Err(format!("{l}: adjoint not transformable at {base:?}"));
            };
            let rhs = tl.adjoint_step().map_err(|e| e.to_string())?;
            ensure(lhs.equivalent_up_to_labels(rhs.output()), || {
                format!("{l} at {base:?}: {lhs} vs {}", rhs.output())
            })?;
            checked += 1;
        }
    }
    ensure(checked == 35 + 56, || format!("only {checked} admissible triples"))?;
    Ok(format!("{checked} base triples"))
}

fn h_polys() -> [UniPoly; 3] {
    [
        UniPoly::from_i64s(&[-1, 0, 0, 0, 1]),
        UniPoly::from_i64s(&[1, 1, 0, 0, 0, 0, 1]),
        UniPoly::from_i64s(&[-2, 1, 0, 0, 0, -3, 0, 0, 1]),
    ]
}

fn random_rf(rng: &mut ChaCha8Rng) -> RatFunc {
    let nd = rng.gen_range(0..=2);
    let num: Vec<Rational> = (0..=nd).map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    let dd = rng.gen_range(0..=1);
    let mut den: Vec<Rational> = (0..dd).map(|_| q(rng.gen_range(-2..=2), 1)).collect();
    den.push(q(1, 1));
    RatFunc::new(UniPoly::new(num), UniPoly::new(den)).unwrap()
}

/// Random element; one in six has `a1 = 0`, one in six `a2 = 0`.
fn random_jonq(rng: &mut ChaCha8Rng, h: &UniPoly) -> JonqElement {
    loop {
        let mut a1 = random_rf(rng);
        let mut a2 = random_rf(rng);
        match rng.gen_range(0..6) {
            0 => a1 = RatFunc::zero(),
            1 => a2 = RatFunc::zero(),
            _ => {}
        }
        if let Ok(u) = JonqElement::new(h.clone(), a1, a2) {
            return u;
        }
    }
}

fn c4_lemma() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let hs = h_polys();
    let mut counts = [0usize; 3];
    for i in 0..200 {
        let u = random_jonq(&mut rng, &hs[i % 3]);
        let r = leminv_check(&u);
        ensure(
            matches!(r.order, PglOrder::One | PglOrder::Two | PglOrder::Infinite),
            || format!("{u}: order {}", r.order),
        )?;
        if u.a1().is_zero() {
            ensure(r.order == PglOrder::Two, || format!("{u}: a1 = 0 but order {}", r.order))?;
            counts[0] += 1;
        } else if !u.a2().is_zero() {
            ensure(r.order == PglOrder::Infinite, || format!("{u}: order {}", r.order))?;
            counts[2] += 1;
        } else {
            ensure(r.order == PglOrder::One, || format!("{u}: a2 = 0 but order {}", r.order))?;
            counts[1] += 1;
        }
    }
    Ok(format!(
        "200 elements: {} with a1=0, {} with a2=0, {} generic",
        counts[0], counts[1], counts[2]
    ))
}

const MAP_DEGREE_CAP: u32 = 24;

fn c5_fixation() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let hs = h_polys();
    let mut maps_checked = 0;
    for i in 0..100 {
        let h = &hs[i % 3];
        let u = random_jonq(&mut rng, h);
        ensure(u.fixes_hyperelliptic(), || format!("identity fails for {u}"))?;
        if maps_checked < 20 {
            let m = u.to_cremona();
            if m.degree() <= MAP_DEGREE_CAP {
                let c = hyperelliptic_curve(h).map_err(|e| e.to_string())?;
                let ok = m.fixes_curve_pointwise(&c).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{u}: map does not fix the curve"))?;
                maps_checked += 1;
            }
        }
    }
    ensure(maps_checked == 20, || format!("only {maps_checked} maps under the degree cap"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("100 identities, 20 maps, {} ms", t.as_millis()))
}

fn c6_involutions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let line = cremona_core::TriHomPoly::x();
    let mut done = 0;
    while done < 10 {
        let mu = q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let nu = q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let Ok(p) = make_phi(&mu, &nu) else {
            continue;
        };
        let pp = p.compose(&p).map_err(|e| e.to_string())?;
        ensure(pp.is_identity(), || format!("phi({mu},{nu}) squared is {pp}"))?;
        ensure(p.fixes_curve_pointwise(&line).unwrap(), || {
            format!("phi({mu},{nu}) moves x = 0")
        })?;
        done += 1;
    }
    let g = make_linear_g(q(2, 1), q(1, 1), q(0, 1)).unwrap();
    let h = make_h_element(RatFunc::one(), RatFunc::one()).unwrap();
    let gi = LinearG::new(q(2, 1), q(1, 1), q(0, 1)).unwrap().inverse().to_map();
    let hi = HElement::new(RatFunc::one(), RatFunc::one()).unwrap().inverse().to_map();
    let gh = g.compose(&h).unwrap();
    let hg = h.compose(&g).unwrap();
    ensure(gh != hg, || "G and H commute".into())?;
    let comm = gh.compose(&gi).unwrap().compose(&hi).unwrap();
    ensure(!comm.is_identity(), || "commutator is trivial".into())?;
    Ok(format!("10 involutions; commutator of degree {}", comm.degree()))
}

fn c7_pencil_lemma() -> Check {
    let types = enumerate_pencil_types(6, DEFAULT_ENUM_BOUND).map_err(|e| e.to_string())?;
    let mut min = i64::MAX;
    let mut assignments = 0;
    for p in &types {
        let r = p.report();
        ensure(r.valid && r.residuals.eq3 == 0, || format!("{p}: {:?}", r.residuals))?;
        for a in node_assignments(p) {
            let b = sextic_free_intersection_bound(p, &a).map_err(|e| e.to_string())?;
            ensure(b >= 4, || format!("{p} with nodes {a:?}: {b}"))?;
            min = min.min(b);
            assignments += 1;
        }
    }
    let line = PencilType::new(1, vec![1]).unwrap();
    ensure(sextic_free_intersection_bound(&line, &[1]) == Ok(4), || {
        "(1;{1}) at a node does not give 4".into()
    })?;
    Ok(format!(
        "{} types, {assignments} assignments, minimum {min}",
        types.len()
    ))
}

fn c8_confluence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut systems = 0;
    let mut with_removal = 0;
    while systems < 100 {
        let n = rng.gen_range(1..=10);
        let k = rng.gen_range(2..=9);
        let mults: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=n)).collect();
        let l = sys(n, &mults);
        if l.virtual_dim() < 1 || l.applicable_rules().is_empty() {
            continue;
        }
        let det = l.remove_fixed_components();
        for _ in 0..50 {
            let other = l.remove_fixed_components_by(|rules| rng.gen_range(0..rules.len()));
            ensure(other == det, || format!("{l}: {other:?} vs {det:?}"))?;
        }
        if det.as_ref().is_ok_and(|(_, r)| !r.is_empty()) {
            with_removal += 1;
        }
        systems += 1;
    }
    Ok(format!("100 systems x 50 orders ({with_removal} with removals)"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 8] = [
        ("example chains reproduce exactly", c1_example_chains),
        ("adjoint dimension equals genus - 1", c2_canonical_dimension),
        ("quadratic transforms commute with the adjoint", c3_covariance),
        ("finite-order elements are involutions", c4_lemma),
        ("de Jonquieres maps fix the hyperelliptic curve", c5_fixation),
        ("quadratic involutions and non-commuting pair", c6_involutions),
        ("pencil equations and sextic bound", c7_pencil_lemma),
        ("fixed-component removal is confluent", c8_confluence),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
