//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use pquiver::charring::{weyl_dim, CharEngine};
use pquiver::examples::{arrow_fixture, module_rep, p2_display, p2_from_display, sl_matrix_model, sl_module, SlModule};
use pquiver::linalg::QMat;
use pquiver::parabolic::{build_parabolic, ParabolicDatum};
use pquiver::params::{sigma_slope, slope_o, EpsilonSet, ParamContext};
use pquiver::quiverbuild::{build_quiver_with_relations, check_directed_for, components, Quiver, VertexWindow, STATUS_COMPLETE};
use pquiver::quiverrep::{check_relations, is_semistable, tau_slope, Decoration, Field, QuiverRep, Verdict};
use pquiver::rootsys::build_root_system;
use pquiver::vortexsolve::{kempf_ness_flow, FlowOptions, FlowVerdict, HermitianRep};
use pquiver::weight::{rat, rat_frac, rational_to_f64, Rational, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($arg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn par(g: &str, sigma: &[usize]) -> Result<ParabolicDatum, String> {
    ok(build_parabolic(&ok(build_root_system(ok(g.parse())?))?, sigma))
}

type Path = Vec<(Weight, Weight)>;
type RelKey = BTreeSet<(Rational, Path)>;

fn relation_keys(q: &Quiver) -> BTreeSet<RelKey> {
    q.relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|t| {
                    let path = t.path.iter().map(|&a| (q.vertices[q.arrow(a).tail].clone(), q.vertices[q.arrow(a).head].clone())).collect();
                    (t.coeff.clone(), path)
                })
                .collect()
        })
        .collect()
}

fn arrow_pairs(q: &Quiver) -> Vec<(Weight, Weight)> {
    let mut v: Vec<_> = q.arrows.iter().map(|a| (q.vertices[a.tail].clone(), q.vertices[a.head].clone())).collect();
    v.sort();
    v
}

fn shift(w: &Weight, d: &[i64]) -> Weight {
    w.add(&Weight::from_ints(d))
}

fn c1_p2_quiver() -> Check {
    let p = par("A2", &[1])?;
    let t = Instant::now();
    let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(2, -9, 9)))?;
    let elapsed = t.elapsed();
    let box_weights: BTreeSet<Weight> = (-9..=9).flat_map(|a| (-9..=9).map(move |b| Weight::from_ints(&[a, b]))).collect();
    let expected: BTreeSet<Weight> = box_weights.iter().filter(|w| { let (x1, x2) = p2_display(w); x1 >= x2 }).cloned().collect();
    let got: BTreeSet<Weight> = q.vertices.iter().cloned().collect();
    ensure!(got == expected && q.vertices.len() == expected.len(), "vertex set differs from {{x1 >= x2}}");
    let mut want = Vec::new();
    for v in &expected {
        let (x1, x2) = p2_display(v);
        for (d1, d2) in [(0, 3), (3, 0)] {
            let h = p2_from_display(&(&x1 + rat(d1)), &(&x2 + rat(d2)));
            if expected.contains(&h) {
                want.push((v.clone(), h));
            }
        }
    }
    want.sort();
    ensure!(arrow_pairs(&q) == want, "arrow set differs: {} built vs {} expected", q.arrows.len(), want.len());
    let comps = components(&q);
    let classes: BTreeSet<i64> = comps
        .iter()
        .map(|c| {
            let (x1, x2) = p2_display(&q.vertices[c[0]]);
            (x1 + x2).to_integer().try_into().map(|s: i64| s.rem_euclid(3)).unwrap_or(-1)
        })
        .collect();
    ensure!(comps.len() == 3 && classes.len() == 3, "expected 3 components, got {}", comps.len());
    for c in &comps {
        let s: BTreeSet<i64> = c
            .iter()
            .map(|&v| {
                let (x1, x2) = p2_display(&q.vertices[v]);
                i64::try_from((x1 + x2).to_integer()).unwrap().rem_euclid(3)
            })
            .collect();
        ensure!(s.len() == 1, "a component mixes classes of x1 + x2 mod 3");
    }
    // r_x = a2 a1 - a1 a2: traverse a1 (x -> x + (0,3)) then a2, minus a2 then a1.
    let mut rels = BTreeSet::new();
    let mut truncated = 0;
    for v in &expected {
        let (x1, x2) = p2_display(v);
        let at = |d1: i64, d2: i64| p2_from_display(&(&x1 + rat(d1)), &(&x2 + rat(d2)));
        let head = at(3, 3);
        if !expected.contains(&head) {
            if !box_weights.contains(&head) {
                truncated += 1;
            }
            continue;
        }
        let mut key = RelKey::new();
        let mut cut = false;
        for (mid, coeff) in [(at(0, 3), rat(1)), (at(3, 0), rat(-1))] {
            let (m1, m2) = p2_display(&mid);
            if m1 < m2 {
                continue;
            }
            if !expected.contains(&mid) {
                cut = true;
                continue;
            }
            key.insert((coeff, vec![(v.clone(), mid.clone()), (mid, head.clone())]));
        }
        if cut {
            truncated += 1;
        } else {
            rels.insert(key);
        }
    }
    ensure!(q.status == STATUS_COMPLETE, "status {}", q.status);
    ensure!(relation_keys(&q) == rels, "relations differ from the commuting squares r_x");
    ensure!(q.relations.len() == rels.len(), "duplicate relations");
    ensure!(q.boundary.truncated_relations == truncated, "truncated relations {} vs {truncated}", q.boundary.truncated_relations);
    ensure!(elapsed < Duration::from_secs(1), "build took {elapsed:?}");
    Ok(format!(
        "{} vertices, {} arrows, 3 components, {} relations on [-9,9]^2 in {elapsed:.2?}",
        q.vertices.len(),
        q.arrows.len(),
        q.relations.len()
    ))
}

fn c2_multiplicities() -> Check {
    let p = par("A2", &[1])?;
    let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(2, -9, 9)))?;
    for v in &q.vertices {
        let (x1, x2) = p2_display(v);
        let n = rat(1) + (x1 - x2) / rat(3);
        let got = ok(weyl_dim(&p, v))?;
        ensure!(n.is_integer() && n == rat(got as i64), "n at {v}: weyl_dim {got} vs {n}");
    }
    Ok(format!("n_x = 1 + (x1 - x2)/3 on all {} vertices", q.vertices.len()))
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    rat_frac(rng.random_range(1..=12), rng.random_range(1..=7))
}

fn c3_slopes() -> Check {
    let p = par("A2", &[1])?;
    let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(2, -9, 9)))?;
    let mut count = 0;
    for eps in [rat(1), rat(2), rat_frac(1, 3), rat_frac(5, 7)] {
        let e = EpsilonSet::uniform(&p, eps.clone());
        for v in &q.vertices {
            let (x1, x2) = p2_display(v);
            let want = -(x1 + x2) / &eps;
            let got = ok(slope_o(&p, &e, v))?;
            ensure!(got == want, "P2 slope at {v}, eps {eps}: {got} vs {want}");
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, n) in [("A1", 1usize), ("A1xA1", 2), ("A1xA1xA1", 3)] {
        let sigma: Vec<usize> = (0..n).collect();
        let p = par(g, &sigma)?;
        for _ in 0..100 {
            let lam: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
            let eps: Vec<Rational> = (0..n).map(|_| random_positive(&mut rng)).collect();
            let e = EpsilonSet { values: eps.iter().cloned().enumerate().collect() };
            let want = lam.iter().zip(&eps).fold(rat(0), |acc, (l, e)| acc + rat(*l) / e);
            let got = ok(slope_o(&p, &e, &Weight::from_ints(&lam)))?;
            ensure!(got == want, "(P1)^{n} slope at {lam:?}: {got} vs {want}");
            count += 1;
        }
    }
    Ok(format!("{count} exact slope evaluations"))
}

fn c4_p1xp1() -> Check {
    let p = par("A1xA1", &[0, 1])?;
    let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(2, -3, 3)))?;
    let all: BTreeSet<Weight> = (-3..=3).flat_map(|a| (-3..=3).map(move |b| Weight::from_ints(&[a, b]))).collect();
    ensure!(q.vertices.iter().cloned().collect::<BTreeSet<_>>() == all, "vertex set is not the full grid");
    let mut want = Vec::new();
    for v in &all {
        for d in [[-2, 0], [0, -2]] {
            let h = shift(v, &d);
            if all.contains(&h) {
                want.push((v.clone(), h));
            }
        }
    }
    want.sort();
    ensure!(arrow_pairs(&q) == want, "arrow set differs from lambda -> lambda - 2L_i");
    let parity = |w: &Weight| i64::try_from((&w.coords[0] + &w.coords[1]).to_integer()).unwrap().rem_euclid(2);
    for (t, h) in arrow_pairs(&q) {
        ensure!(parity(&t) == parity(&h), "arrow {t} -> {h} changes parity");
    }
    let classes: BTreeSet<i64> = q.vertices.iter().map(parity).collect();
    ensure!(classes.len() == 2, "expected 2 parity classes");
    let comps = components(&q);
    for c in &comps {
        let s: BTreeSet<i64> = c.iter().map(|&v| parity(&q.vertices[v])).collect();
        ensure!(s.len() == 1, "a connected component mixes parities");
    }
    let mut rels = BTreeSet::new();
    for v in &all {
        let m1 = shift(v, &[-2, 0]);
        let m2 = shift(v, &[0, -2]);
        let h = shift(v, &[-2, -2]);
        if all.contains(&h) {
            let key: RelKey = [
                (rat(1), vec![(v.clone(), m1.clone()), (m1, h.clone())]),
                (rat(-1), vec![(v.clone(), m2.clone()), (m2, h.clone())]),
            ]
            .into();
            rels.insert(key);
        }
    }
    ensure!(relation_keys(&q) == rels && q.relations.len() == rels.len(), "relations differ from r^(2,1)_lambda");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let lam = Weight::from_ints(&[rng.random_range(-20..=20), rng.random_range(-20..=20)]);
        let eps = [random_positive(&mut rng), random_positive(&mut rng)];
        let tau = rat_frac(rng.random_range(-50..=50), rng.random_range(1..=9));
        let ctx = ok(ParamContext::new(&p, &EpsilonSet { values: [(0, eps[0].clone()), (1, eps[1].clone())].into() }))?;
        let tp = ok(ctx.tau_to_tauprime(&[(lam.clone(), tau.clone())].into()))?;
        let want = &tau - &lam.coords[0] / &eps[0] - &lam.coords[1] / &eps[1];
        ensure!(tp[&lam] == want, "tau' at {lam}: {} vs {want}", tp[&lam]);
    }
    Ok(format!(
        "49-vertex grid, {} arrows, 2 parity subquivers ({} connected components), {} relations; 100 tau' checks",
        q.arrows.len(),
        comps.len(),
        q.relations.len()
    ))
}

fn c5_borel_a2() -> Check {
    let t = Instant::now();
    let p = par("A2", &[0, 1])?;
    let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(2, -3, 3)))?;
    let rs = &p.rs;
    let verts: BTreeSet<Weight> = q.vertices.iter().cloned().collect();
    let mut rels = BTreeSet::new();
    let mut with_n = 0;
    for lam in &verts {
        for (x, &g) in p.nilradical.iter().enumerate() {
            for &g2 in &p.nilradical[x + 1..] {
                let gw = &rs.root(g).fw_coords;
                let g2w = &rs.root(g2).fw_coords;
                let nu = shift(lam, gw);
                let nu2 = shift(lam, g2w);
                let mu = shift(&nu, g2w);
                if !(verts.contains(&mu) && verts.contains(&nu) && verts.contains(&nu2)) {
                    continue;
                }
                let mut key: RelKey = [
                    (rat(1), vec![(lam.clone(), nu.clone()), (nu, mu.clone())]),
                    (rat(-1), vec![(lam.clone(), nu2.clone()), (nu2, mu.clone())]),
                ]
                .into();
                let n = rs.chevalley(g, g2);
                if n != 0 {
                    key.insert((rat(-n), vec![(lam.clone(), mu.clone())]));
                    with_n += 1;
                }
                rels.insert(key);
            }
        }
    }
    ensure!(relation_keys(&q) == rels && q.relations.len() == rels.len(), "relation set differs from the Borel closed form");
    ensure!(with_n > 0, "no relation carries a linear N-term");
    let model = ok(sl_matrix_model(rs))?;
    let mut checked = 0;
    for m in SlModule::ALL {
        let (weights, ops) = ok(sl_module(rs, &model, m))?;
        ensure!(weights.len() <= 6, "module too large");
        let rep = ok(module_rep(&p, &q, &weights, &ops))?;
        let bad = ok(check_relations(&rep))?;
        ensure!(bad.is_empty(), "{} violates {} relations", m.name(), bad.len());
        checked += 1;
    }
    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(format!("{} relations ({with_n} with N-term) match; {checked} sl3 modules satisfy all relations; {elapsed:.2?}", rels.len()))
}

fn acyclic(q: &Quiver) -> bool {
    let n = q.vertices.len();
    let mut indeg = vec![0usize; n];
    for a in &q.arrows {
        indeg[a.head] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop_front() {
        seen += 1;
        for a in q.arrows.iter().filter(|a| a.tail == v) {
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                queue.push_back(a.head);
            }
        }
    }
    seen == n
}

fn c6_directedness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases: [(&str, &[&[usize]]); 4] = [
        ("A1", &[&[0]]),
        ("A2", &[&[0], &[1], &[0, 1]]),
        ("A1xA1", &[&[0], &[1], &[0, 1]]),
        ("B2", &[&[0], &[1], &[0, 1]]),
    ];
    let (mut quivers, mut arrows) = (0, 0);
    for (g, sigmas) in cases {
        for &sigma in sigmas {
            let p = par(g, sigma)?;
            let r = p.rank();
            let mut windows = vec![VertexWindow::cube(r, -3, 3)];
            for _ in 0..5 {
                let lo: Vec<i64> = (0..r).map(|_| rng.random_range(-5..=0)).collect();
                let hi: Vec<i64> = lo.iter().map(|l| l + rng.random_range(0..=6)).collect();
                windows.push(VertexWindow::Box { lo, hi });
            }
            for w in &windows {
                let q = ok(build_quiver_with_relations(&p, w))?;
                ensure!(acyclic(&q), "{g} {sigma:?}: oriented cycle");
                ok(check_directed_for(&p, &q))?;
                for a in &q.arrows {
                    let ht = ok(p.sigma_height(&q.vertices[a.tail]))?;
                    let hh = ok(p.sigma_height(&q.vertices[a.head]))?;
                    ensure!(hh < ht, "{g} {sigma:?}: arrow {} does not decrease the Sigma-height", a.id);
                }
                quivers += 1;
                arrows += q.arrows.len();
            }
        }
    }
    Ok(format!("{quivers} quivers, {arrows} arrows, all acyclic and Sigma-height decreasing"))
}

fn c7_ade_cross_oracle() -> Check {
    let cases: [(&str, &[usize], i64, i64); 8] = [
        ("A2", &[1], -3, 3),
        ("A2", &[0], -3, 3),
        ("A3", &[1], -2, 2),
        ("A3", &[0, 2], -2, 2),
        ("A3", &[0], -2, 2),
        ("A1xA2", &[0, 2], -2, 2),
        ("D4", &[1], -1, 1),
        ("A4", &[2], -1, 1),
    ];
    let mut pairs = 0usize;
    let mut arrows = 0usize;
    for (g, sigma, lo, hi) in cases {
        let p = par(g, sigma)?;
        let engine = CharEngine::new(&p);
        let q = ok(build_quiver_with_relations(&p, &VertexWindow::cube(p.rank(), lo, hi)))?;
        let u: BTreeSet<Vec<i64>> = p.nilradical.iter().map(|&i| p.rs.root(i).fw_coords.clone()).collect();
        let verts: Vec<Vec<i64>> = q.vertices.iter().map(|v| v.to_ints().unwrap()).collect();
        let diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
        for mu in &verts {
            for lam in &verts {
                let a = ok(engine.a_dim_int(mu, lam))?;
                let want = u.contains(&diff(mu, lam)) as u64;
                ensure!(a == want, "{g} {sigma:?}: a_dim({mu:?}, {lam:?}) = {a}, indicator {want}");
                arrows += a as usize;
                if ok(engine.b_dim_int(mu, lam))? > 0 {
                    let path = u.iter().any(|gw| {
                        let nu: Vec<i64> = lam.iter().zip(gw).map(|(x, y)| x + y).collect();
                        p.is_dominant_int(&nu) && u.contains(&diff(mu, &nu))
                    });
                    ensure!(path, "{g} {sigma:?}: b_dim({mu:?}, {lam:?}) > 0 without a length-2 path");
                }
                pairs += 1;
            }
        }
    }
    ensure!(pairs >= 2000, "only {pairs} pairs tested");
    Ok(format!("{pairs} (mu, lambda) pairs over 8 ADE parabolics, {arrows} arrows"))
}

fn c8_conversions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases: [(&str, &[usize]); 6] = [("A1", &[0]), ("A2", &[1]), ("A2", &[0, 1]), ("A1xA1", &[0, 1]), ("B2", &[0]), ("B2", &[1])];
    let mut done = 0;
    while done < 500 {
        let (g, sigma) = cases[done % cases.len()];
        let p = par(g, sigma)?;
        let eps = EpsilonSet { values: p.sigma.iter().map(|&i| (i, random_positive(&mut rng))).collect() };
        let ctx = ok(ParamContext::new(&p, &eps))?;
        let m = rng.random_range(1..=3usize);
        let mut order: BTreeSet<Weight> = BTreeSet::new();
        while order.len() < m + 1 {
            let w: Vec<i64> = (0..p.rank()).map(|_| rng.random_range(-4..=4)).collect();
            if p.is_dominant_int(&w) {
                order.insert(Weight::from_ints(&w));
            }
        }
        let mut order: Vec<Weight> = order.into_iter().collect();
        order.sort_by(|a, b| p.vertex_compare(a, b));
        let sigma_vals: Vec<Rational> = (0..m).map(|_| rat_frac(rng.random_range(-6..=12), rng.random_range(1..=5))).collect();
        let ranks: Vec<i64> = (0..=m).map(|_| rng.random_range(1..=3)).collect();
        let degs: Vec<Rational> = (0..=m).map(|_| rat_frac(rng.random_range(-9..=9), rng.random_range(1..=3))).collect();
        let (tp, _) = ok(ctx.sigma_to_tauprime(&sigma_vals, &order))?;
        let mut cum = Vec::new();
        let mut total_rank = 0;
        let mut deg_f = rat(0);
        for s in 0..=m {
            let (r, d) = ok(ctx.product_degree(&order[s], ranks[s], &degs[s]))?;
            total_rank += r;
            cum.push(total_rank);
            deg_f += d;
        }
        let mu_sigma = ok(sigma_slope(&sigma_vals, &cum, &deg_f))?;
        let q = Quiver::from_parts(order.clone(), &[]);
        let dims: Vec<usize> = ranks.iter().map(|&r| r as usize).collect();
        let mut rep = ok(QuiverRep::zero_maps(q, Field::Rational, dims))?;
        rep.decorations = Some(ranks.iter().zip(&degs).map(|(&rank, d)| Decoration { rank, degree: d.clone() }).collect());
        let n: Vec<u64> = order.iter().map(|w| ctx.n(w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let tpv: Vec<Rational> = order.iter().map(|w| tp[w].clone()).collect();
        let mu_tau = ok(tau_slope(&rep, &tpv, &n))?;
        let shift: Rational = sigma_vals.iter().cloned().sum();
        ensure!(mu_sigma == &mu_tau + &shift, "{g} {sigma:?}: mu_sigma {mu_sigma} vs mu_tau' {mu_tau} + {shift}");
        let back = ok(ctx.tauprime_to_sigma(&tp, &order))?;
        ensure!(back == sigma_vals, "sigma roundtrip failed");
        done += 1;
    }
    Ok(format!("{done} filtration/quiver-sheaf pairs, exact"))
}

struct Fixture {
    name: String,
    rep: QuiverRep,
    tau: Vec<Rational>,
    /// Expected `|φ|²` for a scalar arrow with a closed-form limit.
    scalar_limit: Option<f64>,
}

fn fixture(name: &str, verts: usize, arrows: &[(usize, usize)], dims: &[usize], maps: &[Vec<Vec<i64>>], tau: &[i64]) -> Fixture {
    let vs = (0..verts as i64).map(|i| Weight::from_ints(&[2 * i])).collect();
    let q = Quiver::from_parts(vs, arrows);
    let maps = q.arrows.iter().map(|a| QMat::from_i64(&maps[a.id])).collect();
    let rep = QuiverRep::new(q, Field::Rational, dims.to_vec(), maps).expect("fixture shapes");
    Fixture { name: name.into(), rep, tau: tau.iter().map(|&t| rat(t)).collect(), scalar_limit: None }
}

fn hk_fixtures() -> Vec<Fixture> {
    let mut v = Vec::new();
    for c in [1, 2, 3, 0] {
        for t in [-1, 0, 1, 3] {
            if c == 0 && !(t == 0 || t == 1) {
                continue;
            }
            let (rep, tau) = arrow_fixture(c, t).expect("arrow fixture");
            let limit = (t > 0 && c != 0).then_some(t as f64);
            v.push(Fixture { name: format!("arrow c={c} t={t}"), rep, tau, scalar_limit: limit });
        }
    }
    v.push(fixture("chain 1-1-1 (2,0,-2)", 3, &[(2, 1), (1, 0)], &[1, 1, 1], &[vec![vec![1]], vec![vec![1]]], &[2, 0, -2]));
    v.push(fixture("chain 1-1-1 (-1,0,1)", 3, &[(2, 1), (1, 0)], &[1, 1, 1], &[vec![vec![1]], vec![vec![1]]], &[-1, 0, 1]));
    v.push(fixture("arrow 1->2", 2, &[(1, 0)], &[2, 1], &[vec![vec![1], vec![0]]], &[1, -2]));
    v.push(fixture("identity 2->2", 2, &[(1, 0)], &[2, 2], &[vec![vec![1, 0], vec![0, 1]]], &[1, -1]));
    v.push(fixture("diag(1,2) 2->2", 2, &[(1, 0)], &[2, 2], &[vec![vec![1, 0], vec![0, 2]]], &[1, -1]));
    v.push(fixture("rank-one 2->2", 2, &[(1, 0)], &[2, 2], &[vec![vec![1, 0], vec![0, 0]]], &[1, -1]));
    v.push(fixture("kronecker (1,2)", 2, &[(1, 0), (1, 0)], &[1, 1], &[vec![vec![1]], vec![vec![2]]], &[1, -1]));
    v.push(fixture("kronecker 2->1", 2, &[(1, 0), (1, 0)], &[1, 2], &[vec![vec![1, 0]], vec![vec![0, 1]]], &[2, -1]));
    v.push(fixture("sink of two (2,-1,-1)", 3, &[(1, 0), (2, 0)], &[1, 1, 1], &[vec![vec![1]], vec![vec![1]]], &[2, -1, -1]));
    v.push(fixture("sink of two (1,-2,1)", 3, &[(1, 0), (2, 0)], &[1, 1, 1], &[vec![vec![1]], vec![vec![1]]], &[1, -2, 1]));
    v
}

fn c9_hitchin_kobayashi() -> Check {
    let t = Instant::now();
    let fixtures = hk_fixtures();
    ensure!(fixtures.len() >= 20, "only {} fixtures", fixtures.len());
    let opts = FlowOptions { tol: 1e-8, ..FlowOptions::default() };
    let (mut poly, mut other) = (0, 0);
    for f in &fixtures {
        ensure!(f.rep.total_dim() <= 6, "{}: total dim above 6", f.name);
        let n = vec![1; f.rep.dims.len()];
        let exact = ok(is_semistable(&f.rep, &f.tau, &n))?;
        let polystable = exact.verdict != Verdict::Unstable && exact.polystable;
        let tp: Vec<f64> = f.tau.iter().map(rational_to_f64).collect();
        let hr = ok(HermitianRep::from_exact(&f.rep, n, tp))?;
        let (out, flow) = ok(kempf_ness_flow(&hr, opts))?;
        if polystable {
            ensure!(flow.converged && flow.final_residual < 1e-8, "{}: exact polystable but flow {} at {:e}", f.name, flow.verdict, flow.final_residual);
            poly += 1;
        } else {
            ensure!(
                !flow.converged && matches!(flow.verdict, FlowVerdict::UnstableNumeric | FlowVerdict::Inconclusive),
                "{}: exact {} (polystable {}) but flow {}",
                f.name,
                exact.verdict.as_str(),
                exact.polystable,
                flow.verdict
            );
            other += 1;
        }
        if let Some(limit) = f.scalar_limit {
            let got = out.maps[0][(0, 0)].norm_sqr();
            ensure!((got - limit).abs() < 1e-6, "{}: |phi|^2 = {got}, expected {limit}", f.name);
        }
    }
    let elapsed = t.elapsed();
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!("{} fixtures: {poly} polystable converged, {other} not polystable never converged; {elapsed:.2?}", fixtures.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "P2 quiver reproduction", c1_p2_quiver),
        (2, "multiplicity formula", c2_multiplicities),
        (3, "slope formulas", c3_slopes),
        (4, "(P1)^2 reproduction", c4_p1xp1),
        (5, "Borel A2 relations", c5_borel_a2),
        (6, "directedness", c6_directedness),
        (7, "ADE cross-oracle", c7_ade_cross_oracle),
        (8, "conversion consistency", c8_conversions),
        (9, "Hitchin-Kobayashi at desk scale", c9_hitchin_kobayashi),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let t = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {n}: PASS [{name}] {detail} ({:.2?})", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL [{name}] {detail} ({:.2?})", t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
