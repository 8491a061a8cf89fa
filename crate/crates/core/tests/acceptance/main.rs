//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Seeds, sizes and horizons are fixed below.

mod gen;

use std::process::Command;
use std::time::Instant;

use germlab::analysis::{
    continuity_verdict, converge_check, default_battery, nonconvergence_witness, norm_profile, oscillation_on,
    ultradist_triangle, ContinuityVerdict, FuncSample, NetSpec, NodeValue, TestResult, TriangleKind,
};
use germlab::constructions::{
    arithmetic, compose, diagonal_below, minorize_to_pl, pinch, AnchorSeq, ArithOp, Family, PinchDirection,
};
use germlab::dsl::{parse_germ, Anchors, GermExpr};
use germlab::germ::{CodeGen, ExpPoly, Tier};
use germlab::order::{compare_germwise, frechet_triage, CompareMode, TriageKind, VerdictKind};
use germlab::{validate, Germ, GridWindow, PlGerm, Rat, RatGerm, SeqGerm};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use gen::R;

const HORIZON: u64 = 10_000;
/// Horizon for the net, ring and triangle suites.
const NET_HORIZON: u64 = 2_000;
const TRIANGLE_NCAP: u64 = 64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> R {
    R::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn anchors(rng: &mut R, max: u64) -> Vec<u64> {
    let n = rng.gen_range(3..=12);
    let mut xs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max)).collect();
    xs.sort_unstable();
    xs.dedup();
    xs
}

fn c1_pinching() -> Outcome {
    let mut rng = rng(1);
    let mut done = [0u32; 2];
    for (d, dir) in [PinchDirection::Lower, PinchDirection::Upper].into_iter().enumerate() {
        let mut attempts = 0;
        while done[d] < 200 {
            attempts += 1;
            if attempts > 50_000 {
                return Err(format!("only {} qualifying germs for {dir:?}", done[d]));
            }
            let m0 = gen::germ(gen::certified_code(&mut rng));
            let m = gen::germ(gen::certified_code(&mut rng));
            let xs = anchors(&mut rng, 600);
            if xs.len() < 3 {
                continue;
            }
            let holds = |j: u64| {
                let (a, b) = (m.value(j).unwrap(), m0.value(j).unwrap());
                match dir {
                    PinchDirection::Lower => a > b,
                    PinchDirection::Upper => a < b,
                }
            };
            if !xs.iter().all(|&j| holds(j)) {
                continue;
            }
            let seq = AnchorSeq::from_list(xs.clone()).map_err(e2s)?;
            let bound = pinch(dir, &m0, &seq).map_err(e2s)?;
            let (first, last) = (xs[0], *xs.last().unwrap());
            let range = match dir {
                PinchDirection::Lower => first..=last - 1,
                PinchDirection::Upper => first + 1..=last,
            };
            for j in range {
                let (a, b) = (m.value(j).map_err(e2s)?, bound.value(j).map_err(e2s)?);
                let ok = match dir {
                    PinchDirection::Lower => a > b,
                    PinchDirection::Upper => a < b,
                };
                ensure(ok, || format!("{dir:?} bound violated at j={j}, anchors {xs:?}"))?;
            }
            done[d] += 1;
        }
    }
    Ok("200 lower + 200 upper germs, 0 failures".into())
}

fn pseudo_monotone(rng: &mut R) -> Germ {
    let kind = rng.gen_range(0..4);
    let a = rng.gen_range(1..=3u64);
    let b = rng.gen_range(1..=3u64);
    let c = rng.gen_range(a..=a + 5);
    let d = rng.gen_range(1..=3u32);
    let s = rng.gen_range(2..=12u64);
    let g = match kind {
        // a / (b j^d + c)
        0 => RatGerm::from_fn(1, Tier::PseudoMonotone, "rational", move |j| {
            Ok(Rat::new(a, b * j.pow(d) + c))
        }),
        // plateaus of width s
        1 => RatGerm::from_fn(1, Tier::PseudoMonotone, "steps", move |j| {
            Ok(Rat::new(1, b * j.div_ceil(s).pow(d) + 1))
        }),
        // 1/(b j) + 1/(b j^2) on a plateau grid
        2 => RatGerm::from_fn(1, Tier::PseudoMonotone, "mixed", move |j| {
            let k = j.div_ceil(s);
            Ok(Rat::new(1, 2 * b * k) + Rat::new(1, 2 * b * k * k))
        }),
        // 2^-ceil(j / (10 s))
        _ => RatGerm::from_fn(1, Tier::PseudoMonotone, "halving", move |j| {
            let e = j.div_ceil(10 * s) as i64;
            Ok(Rat::from_int(2).pow(-e).unwrap())
        }),
    };
    Germ::Rat(g)
}

fn c2_minorant() -> Outcome {
    let mut rng = rng(2);
    let mut worst_j1 = 0;
    for n in 0..100 {
        let m = pseudo_monotone(&mut rng);
        let out = minorize_to_pl(&m, HORIZON).map_err(|e| format!("germ {n}: {e}"))?;
        let pl = Germ::Pl(out.germ.clone());
        let w = GridWindow::new(out.germ.start(), HORIZON).map_err(e2s)?;
        let report = validate(&pl, &w);
        ensure(report.is_valid(), || format!("germ {n}: minorant fails validation at {:?}", report.first_violation))?;
        ensure(out.valid_from <= out.germ.start(), || format!("germ {n}: reported j1={}", out.valid_from))?;
        for j in out.valid_from..=HORIZON {
            ensure(pl.value(j).unwrap() < m.value(j).unwrap(), || format!("germ {n}: not below at j={j}"))?;
        }
        worst_j1 = worst_j1.max(out.valid_from);
    }
    Ok(format!("100 germs to j=10^4, 0 failures, largest j1={worst_j1}"))
}

fn c3_diagonal() -> Outcome {
    let mut rng = rng(3);
    for size in 1..=50usize {
        let members: Vec<PlGerm> = (0..size)
            .map(|_| {
                let start = rng.gen_range(1..=20);
                PlGerm::new(start, CodeGen::Closed(gen::poly_code(&mut rng, 3)))
            })
            .collect();
        let diag = diagonal_below(&Family::Finite(members.clone())).map_err(e2s)?;
        let s = diag.start();
        let codes: Vec<BigInt> = (s..=HORIZON).map(|k| diag.code(k).unwrap()).collect();
        for (i, p) in members.iter().enumerate() {
            let j = i as u64 + 1;
            for k in j.max(p.start()).max(s)..=HORIZON {
                ensure(codes[(k - s) as usize] > p.code(k).unwrap(), || {
                    format!("size {size}: not below member {j} at k={k}")
                })?;
            }
        }
    }
    // K_j(k) = k + j as a stream: L(k) = 3k at every k
    let shifted = Family::stream(|j| PlGerm::new(1, CodeGen::custom("k + j", move |k| Ok(BigInt::from(k + j)))));
    let diag = diagonal_below(&shifted).map_err(e2s)?;
    for k in 1..=HORIZON {
        ensure(diag.code(k).unwrap() == BigInt::from(3 * k), || format!("L({k}) != 3k"))?;
    }
    Ok("sizes 1-50 to k=10^4, 0 failures; L(k)=3k exact on the shift family".into())
}

fn decreasing_sequence(rng: &mut R) -> Vec<Germ> {
    let len = rng.gen_range(2..=7);
    match rng.gen_range(0..3) {
        // K_i = i * c j^d: smaller germs as i grows
        0 => {
            let base = gen::poly_code(rng, 2);
            (1..=len).map(|i| gen::germ(base.scale(&BigInt::from(i)))).collect()
        }
        // K_i = j^(d+i)
        1 => {
            let d = rng.gen_range(0..=1u32);
            (1..=len).map(|i| gen::germ(ExpPoly::var().pow(d + i).unwrap())).collect()
        }
        // rational profiles 1/(i j + c): minorized inside the witness
        _ => {
            let c = rng.gen_range(0..=4u64);
            (1..=len as u64)
                .map(|i| {
                    Germ::Rat(RatGerm::from_fn(1, Tier::StrictMonotone, "shrinking", move |j| {
                        Ok(Rat::new(1, i * j + c))
                    }))
                })
                .collect()
        }
    }
}

fn c4_first_countability() -> Outcome {
    let mut rng = rng(4);
    let mut converged = 0;
    for n in 0..100 {
        let seq = decreasing_sequence(&mut rng);
        let w = GridWindow::new(1, NET_HORIZON).map_err(e2s)?;
        for pair in seq.windows(2) {
            let v = compare_germwise(&pair[1], &pair[0], &w, CompareMode::Auto).map_err(e2s)?;
            ensure(v.is_lt(), || format!("sequence {n} is not decreasing"))?;
        }
        let p = nonconvergence_witness(&seq, NET_HORIZON).map_err(e2s)?;
        let net = NetSpec::chain(
            seq.into_iter().map(NodeValue::Germ).collect(),
            NodeValue::Germ(Germ::Zero),
            vec![("p*".into(), p)],
        )
        .map_err(e2s)?;
        let r = converge_check(&net, NET_HORIZON).map_err(e2s)?;
        match &r.tests[0].result {
            TestResult::Fails { failing, .. } => {
                // every candidate's upper set contains the last node
                let names: Vec<&str> = failing.iter().map(|(n, _)| n.as_str()).collect();
                let last = net.names().last().unwrap().as_str();
                ensure(names.contains(&last), || format!("sequence {n}: tail node not failing"))?;
            }
            TestResult::Converges { .. } => converged += 1,
        }
    }
    ensure(converged == 0, || format!("{converged} sequences converge"))?;
    Ok("100 sequences, all FAILS against the diagonal witness".into())
}

fn c5_scalar() -> Outcome {
    let f = gen::germ(ExpPoly::var());
    let nodes: Vec<NodeValue> = (1..=40).map(|n| NodeValue::Germ(f.scaled(&Rat::new(1, n)))).collect();
    let p = PlGerm::closed(ExpPoly::var().pow(2).unwrap());
    let net = NetSpec::chain(nodes, NodeValue::Germ(Germ::Zero), vec![("p".into(), p)]).map_err(e2s)?;
    let r = converge_check(&net, NET_HORIZON).map_err(e2s)?;
    match &r.tests[0].result {
        TestResult::Fails { failing, .. } => {
            ensure(failing.len() == 40, || format!("{} failing nodes", failing.len()))?;
            for (n, (_, v)) in failing.iter().enumerate() {
                let n = n as u64 + 1;
                // 1/(n j) > 1/j^2 exactly for j > n
                ensure(v.kind == VerdictKind::HoldsUptoGt && v.witness_index == n + 1, || {
                    format!("node {n}: {} at {}", v.kind, v.witness_index)
                })?;
            }
            Ok("n=1..40 FAILS with witness n+1 for every n".into())
        }
        other => Err(format!("expected FAILS, got {other:?}")),
    }
}

/// Odd or even extension of a germ to a sample on [1, horizon].
fn signed_sample(g: &Germ, odd: bool, w: &GridWindow) -> FuncSample {
    let s = FuncSample::from_germ(g, w).unwrap();
    if !odd {
        return s;
    }
    let pts = s
        .points()
        .iter()
        .map(|(x, v)| (x.clone(), if x.is_negative() { -v } else { v.clone() }))
        .collect();
    FuncSample::from_points(pts, s.j_from(), s.j_to()).unwrap()
}

fn random_net(rng: &mut R, battery_deg: u32, w: &GridWindow) -> Vec<FuncSample> {
    let len = rng.gen_range(2..=5);
    (0..len)
        .map(|i| {
            // first node may be large; later nodes decay faster than every test
            let code = if i == 0 && rng.gen_bool(0.5) {
                ExpPoly::var()
            } else {
                let d = battery_deg + rng.gen_range(1..=2);
                ExpPoly::var().pow(d).unwrap().scale(&BigInt::from(rng.gen_range(1..=3)))
            };
            signed_sample(&gen::germ(code), rng.gen_bool(0.5), w)
        })
        .collect()
}

fn c6_ring() -> Outcome {
    let mut rng = rng(6);
    let horizon = 1_000;
    let w = GridWindow::new(1, horizon).map_err(e2s)?;
    for n in 0..50 {
        let battery: Vec<(String, PlGerm)> = (0..2)
            .map(|i| (format!("p{i}"), gen::pl(gen::poly_code(&mut rng, 2))))
            .collect();
        let deg = 2;
        let (f, g) = (random_net(&mut rng, deg, &w), random_net(&mut rng, deg, &w));
        let k = f.len().min(g.len());
        let chain = |s: Vec<FuncSample>| {
            NetSpec::chain(s.into_iter().take(k).map(NodeValue::Sample).collect(), NodeValue::Germ(Germ::Zero), battery.clone())
        };
        let product: Vec<FuncSample> = f.iter().zip(&g).map(|(a, b)| a.mul(b).unwrap()).collect();
        let rf = converge_check(&chain(f).map_err(e2s)?, horizon).map_err(e2s)?;
        let rg = converge_check(&chain(g).map_err(e2s)?, horizon).map_err(e2s)?;
        ensure(rf.converges() && rg.converges(), || format!("pair {n}: factor nets do not converge"))?;
        let mut products = Vec::new();
        for (a, p) in &battery {
            for (b, q) in &battery {
                let pq = arithmetic(&ArithOp::Mul, &Germ::Pl(p.clone()), Some(&Germ::Pl(q.clone()))).map_err(e2s)?;
                products.push((format!("{a}{b}"), pq.as_pl().unwrap().clone()));
            }
        }
        let net = chain(product).map_err(e2s)?.with_battery(products);
        let r = converge_check(&net, horizon).map_err(e2s)?;
        ensure(r.converges(), || format!("pair {n}: product net fails: {:?}", r.tests))?;
    }
    // submultiplicativity on random signed samples
    for n in 0..200 {
        let j_to = rng.gen_range(8..=120);
        let mut vals = || {
            let v: Vec<Rat> = (0..=2 * j_to).map(|_| Rat::new(rng.gen_range(-50..=50), rng.gen_range(1..=30))).collect();
            v
        };
        let (va, vb) = (vals(), vals());
        let mk = |v: &[Rat]| {
            let f = |x: &Rat| {
                if x.is_zero() {
                    return Rat::zero();
                }
                let r = x.abs().recip().unwrap().numer().clone();
                let i: usize = r.try_into().unwrap();
                let idx = if x.is_positive() { i } else { j_to as usize + i };
                v[idx].clone()
            };
            FuncSample::symmetric_grid(1, j_to, f).unwrap()
        };
        let (a, b) = (mk(&va), mk(&vb));
        let (la, lb, lab) = (norm_profile(&a), norm_profile(&b), norm_profile(&a.mul(&b).map_err(e2s)?));
        for j in 1..=j_to {
            let lhs = lab.value(j).map_err(e2s)?;
            let rhs = la.value(j).map_err(e2s)? * lb.value(j).map_err(e2s)?;
            ensure(lhs <= rhs, || format!("sample pair {n}: submultiplicativity fails at j={j}"))?;
        }
    }
    Ok("50 net pairs converge as products; 200 sample pairs submultiplicative".into())
}

fn c7_composition() -> Outcome {
    let mut rng = rng(7);
    let mut done = 0;
    let mut attempts = 0;
    let w = GridWindow::new(1, HORIZON).map_err(e2s)?;
    while done < 200 {
        attempts += 1;
        if attempts > 5_000 {
            return Err(format!("only {done} ordered pairs"));
        }
        let exp = rng.gen_bool(0.3);
        let (ka, kb, kc) = if exp {
            let c = ExpPoly::poly(&[rng.gen_range(0..=3), rng.gen_range(1..=2)]);
            (gen::exp_code(&mut rng), gen::exp_code(&mut rng), c)
        } else {
            (gen::poly_code(&mut rng, 3), gen::poly_code(&mut rng, 3), gen::poly_code(&mut rng, 2))
        };
        let (mut a, mut b, c) = (gen::pl(ka), gen::pl(kb), gen::pl(kc));
        let mut v = compare_germwise(&Germ::Pl(a.clone()), &Germ::Pl(b.clone()), &w, CompareMode::Auto).map_err(e2s)?;
        if v.is_gt() {
            std::mem::swap(&mut a, &mut b);
            v = v.flipped();
        }
        if !v.is_lt() {
            continue;
        }
        let ac = Germ::Pl(compose(&a, &c).map_err(e2s)?);
        let bc = Germ::Pl(compose(&b, &c).map_err(e2s)?);
        let wc = GridWindow::new(ac.start().max(bc.start()), HORIZON).map_err(e2s)?;
        let vc = compare_germwise(&ac, &bc, &wc, CompareMode::Auto).map_err(e2s)?;
        ensure(vc.is_lt(), || format!("triple {done}: composition lost the order: {}", vc.kind))?;
        // predicted: least j with K_c(j) >= j1, extended down while a < b at K_c(j)
        let j1 = BigInt::from(v.witness_index);
        let mut pred = wc.from();
        while c.code(pred).unwrap() < j1 {
            pred += 1;
        }
        while pred > wc.from() {
            let i: u64 = c.code(pred - 1).unwrap().try_into().unwrap();
            if a.value(i).unwrap() < b.value(i).unwrap() {
                pred -= 1;
            } else {
                break;
            }
        }
        ensure(vc.witness_index == pred, || {
            format!("triple {done}: witness {} but predicted {pred}", vc.witness_index)
        })?;
        done += 1;
    }
    Ok("200 ordered triples, reindexed witness exact, 0 failures".into())
}

fn c8_triangle() -> Outcome {
    let mut rng = rng(8);
    let w = GridWindow::new(1, NET_HORIZON).map_err(e2s)?;
    let mut counts = [0u32; 3];
    let mut first_bad = None;
    for n in 0..200 {
        let mut pick = || {
            if rng.gen_bool(0.15) {
                Germ::Zero
            } else {
                gen::germ(gen::certified_code(&mut rng))
            }
        };
        let (f, g, h) = (pick(), pick(), pick());
        let v = ultradist_triangle(&f, &g, &h, &w, TRIANGLE_NCAP).map_err(e2s)?;
        let slot = match v.kind {
            TriangleKind::HoldsAtHorizon => 0,
            TriangleKind::Unresolved => 1,
            TriangleKind::Violation => 2,
        };
        counts[slot] += 1;
        if slot > 0 && first_bad.is_none() {
            first_bad = Some(format!("triple {n}: {v:?}"));
        }
    }
    ensure(counts[0] == 200, || {
        format!("holds {}, unresolved {}, violations {}; {}", counts[0], counts[1], counts[2], first_bad.unwrap_or_default())
    })?;
    Ok("200 triples HOLDS_AT_HORIZON".into())
}

/// Independent classification from the explicit index set.
fn triage_oracle(less: &[bool]) -> TriageKind {
    let n = less.len();
    let cut = |k: usize| k * n / 4;
    let upper = &less[cut(2)..];
    if upper.iter().all(|&b| b) {
        return TriageKind::AllFreeUltrafilters;
    }
    if upper.iter().all(|&b| !b) {
        return TriageKind::NoFreeUltrafilter;
    }
    let blocks_hit = |want: bool| (0..4).all(|k| less[cut(k)..cut(k + 1)].contains(&want));
    if blocks_hit(true) && blocks_hit(false) {
        TriageKind::DependsOnUltrafilter
    } else {
        TriageKind::Unresolved
    }
}

fn random_seq_pair(rng: &mut R) -> (Vec<Rat>, Vec<Rat>) {
    let n = rng.gen_range(8..=400usize);
    let s: Vec<Rat> = (1..=n).map(|i| Rat::new(1, i as u64)).collect();
    let pattern = rng.gen_range(0..6);
    let cut = rng.gen_range(0..n);
    let period = rng.gen_range(2..=7usize);
    let r = (0..n)
        .map(|k| {
            let below = match pattern {
                0 => k >= cut,
                1 => k < cut,
                2 => k % period == 0,
                3 => rng.gen_bool(0.5),
                4 => (k as f64).sqrt().fract() == 0.0,
                _ => k % period != 0 && k >= cut / 2,
            };
            let eps = Rat::new(1, 4 * (k as u64 + 1));
            match (below, rng.gen_range(0..10)) {
                (false, 0) => s[k].clone(),
                (true, _) => &s[k] - &eps,
                (false, _) => &s[k] + &eps,
            }
        })
        .collect();
    (r, s)
}

fn c9_triage() -> Outcome {
    let mut rng = rng(9);
    let mut implications = 0;
    for n in 0..500 {
        let (r, s) = random_seq_pair(&mut rng);
        let len = r.len() as u64;
        let less: Vec<bool> = r.iter().zip(&s).map(|(a, b)| a < b).collect();
        let (ra, sa) = (SeqGerm::from_table(1, r), SeqGerm::from_table(1, s));
        let v = frechet_triage(&ra, &sa, len).map_err(e2s)?;
        let want = triage_oracle(&less);
        ensure(v.kind == want, || format!("pair {n}: triage {} but oracle {}", v.kind.name(), want.name()))?;
        let w = GridWindow::new(1, len).map_err(e2s)?;
        let c = compare_germwise(&Germ::Seq(ra), &Germ::Seq(sa), &w, CompareMode::Auto).map_err(e2s)?;
        if c.is_lt() {
            implications += 1;
            ensure(v.kind == TriageKind::AllFreeUltrafilters, || format!("pair {n}: LT but {}", v.kind.name()))?;
        }
    }
    Ok(format!("500 pairs match the oracle; {implications} LT pairs all ALL_FREE_ULTRAFILTERS"))
}

fn c10_continuity() -> Outcome {
    let battery = default_battery(3, 2);
    let w = GridWindow::new(1, 8).map_err(e2s)?;
    let id = FuncSample::symmetric_grid(1, 1024, |x| x.clone()).map_err(e2s)?;
    let jump = FuncSample::symmetric_grid(1, 1024, |x| {
        if x.is_positive() {
            x + Rat::new(1, 2)
        } else {
            x.clone()
        }
    })
    .map_err(e2s)?;
    let v = continuity_verdict(&id, &battery, &w).map_err(e2s)?;
    ensure(matches!(v, ContinuityVerdict::ContinuousAtHorizon { .. }), || format!("identity: {}", v.name()))?;
    let v = continuity_verdict(&jump, &battery, &w).map_err(e2s)?;
    ensure(matches!(v, ContinuityVerdict::DiscontinuousWitness { .. }), || format!("jump: {}", v.name()))?;

    // oscillation is monotone in the allowance
    let square = FuncSample::symmetric_grid(1, 256, |x| x * x).map_err(e2s)?;
    let rng = std::cell::RefCell::new(rng(10));
    let noise = FuncSample::symmetric_grid(1, 256, |x| {
        if x.is_zero() {
            Rat::zero()
        } else {
            Rat::new(rng.borrow_mut().gen_range(-9..=9), 7)
        }
    })
    .map_err(e2s)?;
    let mut radii: Vec<Germ> = battery.iter().map(|p| Germ::Pl(p.clone())).collect();
    radii.extend(battery.iter().map(|p| Germ::Pl(p.clone()).scaled(&Rat::new(1, 2))));
    let ow = GridWindow::new(1, 64).map_err(e2s)?;
    let mut tested = 0;
    for f in [&id, &jump, &square, &noise] {
        let f = f.with_range(1, 64).map_err(e2s)?;
        let profiles: Vec<Germ> = radii.iter().map(|s| Germ::Rat(oscillation_on(&f, s, &ow).unwrap())).collect();
        for (s1, o1) in radii.iter().zip(&profiles) {
            for (s2, o2) in radii.iter().zip(&profiles) {
                for j in ow.indices() {
                    if s1.value(j).unwrap() <= s2.value(j).unwrap() {
                        tested += 1;
                        ensure(o1.value(j).unwrap() <= o2.value(j).unwrap(), || format!("oscillation not monotone at j={j}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("identity continuous, jump discontinuous; {tested} monotonicity checks"))
}

fn random_germ_expr(rng: &mut R, depth: u32) -> GermExpr {
    let b = Box::new;
    let name = |rng: &mut R| format!("g{}", rng.gen_range(0..20));
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 => GermExpr::Ref(name(rng)),
            1 => GermExpr::Pl { start: rng.gen_bool(0.3).then(|| rng.gen_range(1..9)), code: gen::rat_expr(rng, 3) },
            2 => GermExpr::Rat {
                start: rng.gen_bool(0.3).then(|| rng.gen_range(1..9)),
                value: gen::rat_expr(rng, 3),
                tier: [None, Some(Tier::PseudoMonotone), Some(Tier::StrictMonotone), Some(Tier::Unclassified)]
                    .choose(rng)
                    .cloned()
                    .flatten(),
            },
            _ => GermExpr::Table {
                start: rng.gen_range(1..9),
                head: (0..rng.gen_range(0..4)).map(|_| BigInt::from(rng.gen_range(1..100))).collect(),
                tail: gen::rat_expr(rng, 2),
            },
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..11) {
        0 => GermExpr::Compose(b(random_germ_expr(rng, d)), b(random_germ_expr(rng, d))),
        1 => GermExpr::Mul(b(random_germ_expr(rng, d)), b(random_germ_expr(rng, d))),
        2 => GermExpr::Add(b(random_germ_expr(rng, d)), b(random_germ_expr(rng, d))),
        3 => GermExpr::Div(b(random_germ_expr(rng, d)), b(random_germ_expr(rng, d))),
        4 => GermExpr::Scale(Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=9)), b(random_germ_expr(rng, d))),
        5 => GermExpr::Inv(b(random_germ_expr(rng, d))),
        6 => GermExpr::Switch(b(random_germ_expr(rng, d))),
        7 => GermExpr::Diag((0..rng.gen_range(1..4)).map(|_| random_germ_expr(rng, d)).collect()),
        8 => GermExpr::Minor(b(random_germ_expr(rng, d))),
        _ => {
            let dir = if rng.gen_bool(0.5) { PinchDirection::Lower } else { PinchDirection::Upper };
            let anchors = if rng.gen_bool(0.5) {
                Anchors::List((0..rng.gen_range(1..5)).map(|_| rng.gen_range(1..500)).collect())
            } else {
                Anchors::Rule(gen::rat_expr(rng, 2))
            };
            GermExpr::Pinch(dir, b(random_germ_expr(rng, d)), anchors)
        }
    }
}

fn c11_cli() -> Outcome {
    let mut rng = rng(11);
    for n in 0..500 {
        let e = random_germ_expr(&mut rng, 4);
        let text = e.to_string();
        let back = parse_germ(&text).map_err(|err| format!("ast {n}: `{text}` does not parse: {err}"))?;
        ensure(back == e, || format!("ast {n}: round trip changed `{text}`"))?;
    }
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let bin = env!("CARGO_BIN_EXE_germlab");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).current_dir(data).output().expect("spawn germlab");
        (out.status.code(), out.stdout)
    };
    let commands: [&[&str]; 6] = [
        &["compare", "order.germ", "a", "b", "--horizon", "1000"],
        &["eval", "order.germ", "m", "--range", "1..40"],
        &["converge", "shrink.net", "--horizon", "300"],
        &["converge", "battery.net", "--horizon", "300"],
        &["continuity", "jump.csv"],
        &["triangle", "order.germ", "a", "b", "c", "--horizon", "500", "--nmax", "64"],
    ];
    for args in commands {
        let first = run(args);
        let second = run(args);
        ensure(first == second, || format!("output differs between runs of {args:?}"))?;
        ensure(first.0 == Some(0), || format!("{args:?} exited {:?}", first.0))?;
    }
    let compare = run(commands[0]);
    ensure(
        compare.1 == b"VERDICT kind=HOLDS_UPTO_LT witness=3 horizon=1000 lhs=a rhs=b\n",
        || format!("compare printed {:?}", String::from_utf8_lossy(&compare.1)),
    )?;
    let codes = [
        (run(&["validate", "order.germ", "x", "--horizon", "100"]).0, Some(1)),
        (run(&["eval", "order.germ", "missing"]).0, Some(1)),
        (run(&["eval", "bad.germ", "a"]).0, Some(2)),
        (run(&["frobnicate"]).0, Some(2)),
    ];
    for (i, (got, want)) in codes.iter().enumerate() {
        ensure(got == want, || format!("exit code case {i}: {got:?}, expected {want:?}"))?;
    }
    Ok("500 ASTs round-trip; 6 commands byte-identical; exit codes 0/1/2 observed".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("pinching soundness", c1_pinching),
        ("coinitial minorant", c2_minorant),
        ("diagonalization", c3_diagonal),
        ("non-first-countability", c4_first_countability),
        ("scalar multiplication", c5_scalar),
        ("ring continuity", c6_ring),
        ("composition monotonicity", c7_composition),
        ("strong triangle", c8_triangle),
        ("free-ultrafilter triage", c9_triage),
        ("continuity criterion", c10_continuity),
        ("parser and CLI", c11_cli),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {n:>2} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {n:>2} {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
