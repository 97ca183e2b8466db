//! Worked examples: `ℙ²`, `ℙ¹ × ℙ¹`, the Borel quiver of `SL(3)`, holomorphic
//! triples, and the `sl_{n+1}` matrix model used to test Borel relations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::parabolic::{build_parabolic, ParabolicDatum};
use crate::params::{triple_epsilon, EpsilonSet, ParamContext};
use crate::quiverbuild::export::relation_text;
use crate::quiverbuild::{build_quiver_with_relations, components, Quiver, VertexWindow};
use crate::quiverrep::{check_relations, Field, QuiverRep};
use crate::rootsys::{build_root_system, RootSystem, Series};
use crate::vortexsolve::chain_vortex_residual;
use crate::weight::{format_rational, rat, Rational, Weight};

pub const EXAMPLE_NAMES: [&str; 4] = ["p1xp1", "p2", "borel-a2", "triple"];

/// The text report of a named example.
pub fn reproduce(name: &str) -> Result<String> {
    match name {
        "p1xp1" => p1xp1_report(),
        "p2" => p2_report(),
        "borel-a2" => borel_a2_report(),
        "triple" => triple_report(),
        other => Err(Error::Config(format!("unknown example {other:?}; expected one of {}", EXAMPLE_NAMES.join(", ")))),
    }
}

fn parabolic(group: &str, sigma: &[usize]) -> Result<ParabolicDatum> {
    build_parabolic(&build_root_system(group.parse()?)?, sigma)
}

/// `ℙ² = SL(3)/P` with `Σ = {α₂}` (zero-based `[1]`).
pub fn p2_parabolic() -> Result<ParabolicDatum> {
    parabolic("A2", &[1])
}

/// `(x₁, x₂) = (l₁ − l₂, −2l₁ − l₂)` for `λ = l₁λ_{α₁} + l₂λ_{α₂}`.
pub fn p2_display(lambda: &Weight) -> (Rational, Rational) {
    let (l1, l2) = (&lambda.coords[0], &lambda.coords[1]);
    (l1 - l2, -(rat(2) * l1) - l2)
}

/// Inverse of [`p2_display`].
pub fn p2_from_display(x1: &Rational, x2: &Rational) -> Weight {
    let l1 = (x1 - x2) / rat(3);
    let l2 = -(rat(2) * x1 + x2) / rat(3);
    Weight::new(vec![l1, l2])
}

fn fmt_pair(a: &Rational, b: &Rational) -> String {
    format!("({},{})", format_rational(a), format_rational(b))
}

/// `1` for `a^{(1)}: x ↦ x + (0,3)`, `2` for `a^{(2)}: x ↦ x + (3,0)`.
pub fn p2_arrow_kind(q: &Quiver, a: usize) -> Option<u8> {
    let ar = q.arrow(a);
    let (t1, t2) = p2_display(&q.vertices[ar.tail]);
    let (h1, h2) = p2_display(&q.vertices[ar.head]);
    match (h1 - t1, h2 - t2) {
        (d1, d2) if d1.is_zero() && d2 == rat(3) => Some(1),
        (d1, d2) if d1 == rat(3) && d2.is_zero() => Some(2),
        _ => None,
    }
}

fn p2_label(q: &Quiver, a: usize) -> String {
    let (x1, x2) = p2_display(&q.vertices[q.arrow(a).tail]);
    match p2_arrow_kind(q, a) {
        Some(k) => format!("a{k}_{}", fmt_pair(&x1, &x2)),
        None => format!("a{a}"),
    }
}

pub fn p2_report() -> Result<String> {
    let p = p2_parabolic()?;
    let q = build_quiver_with_relations(&p, &VertexWindow::cube(2, -3, 3))?;
    let ctx = ParamContext::new(&p, &EpsilonSet::uniform(&p, rat(1)))?;
    let mut s = String::new();
    writeln!(s, "# P2 = SL(3)/P, group A2, Sigma = {{a2}}").ok();
    writeln!(s, "# weights l = l1*w1 + l2*w2 with l1 >= 0; display x = (l1 - l2, -2*l1 - l2)").ok();
    writeln!(s, "# window: l in [-3,3]^2; status {}", q.status).ok();
    let comps = components(&q);
    writeln!(s, "vertices {}  arrows {}  relations {}  components {}", q.vertices.len(), q.arrows.len(), q.relations.len(), comps.len()).ok();
    writeln!(s, "\n## components (x1 + x2 = -h mod 3)").ok();
    for (i, c) in comps.iter().enumerate() {
        let (x1, x2) = p2_display(&q.vertices[c[0]]);
        let h = num::Integer::mod_floor(&(-(x1 + x2)).to_integer(), &3.into());
        writeln!(s, "component {i}: h = {h}, {} vertices", c.len()).ok();
    }
    writeln!(s, "\n## vertices: x, l, n_x (weyl_dim), 1 + (x1 - x2)/3, slope (eps = 1), -(x1 + x2)").ok();
    for v in &q.vertices {
        let (x1, x2) = p2_display(v);
        let n = ctx.n(v)?;
        let formula = rat(1) + (&x1 - &x2) / rat(3);
        let slope = ctx.slope(v)?;
        let closed = -(&x1 + &x2);
        writeln!(
            s,
            "{:>9} {:>8} {:>3} {:>3} {:>4} {:>4}",
            fmt_pair(&x1, &x2),
            v.to_string(),
            n,
            format_rational(&formula),
            format_rational(&slope),
            format_rational(&closed)
        )
        .ok();
    }
    writeln!(s, "\n## arrows").ok();
    for a in &q.arrows {
        let (t1, t2) = p2_display(&q.vertices[a.tail]);
        let (h1, h2) = p2_display(&q.vertices[a.head]);
        writeln!(s, "{}: {} -> {}", p2_label(&q, a.id), fmt_pair(&t1, &t2), fmt_pair(&h1, &h2)).ok();
    }
    writeln!(s, "\n## relations (paths in traversal order)").ok();
    for r in &q.relations {
        let start = q.arrow(r.terms[0].path[0]).tail;
        let (x1, x2) = p2_display(&q.vertices[start]);
        writeln!(s, "r_{} = {}", fmt_pair(&x1, &x2), relation_text(r, |a| p2_label(&q, a))).ok();
    }
    writeln!(s, "\n## boundary").ok();
    writeln!(s, "dropped arrows {}  truncated relations {}", q.boundary.dropped_arrows.len(), q.boundary.truncated_relations).ok();
    Ok(s)
}

/// `ℙ¹ × ℙ¹`: the Borel of `SL(2) × SL(2)`.
pub fn p1xp1_parabolic() -> Result<ParabolicDatum> {
    parabolic("A1xA1", &[0, 1])
}

fn p1_label(q: &Quiver, a: usize) -> String {
    let ar = q.arrow(a);
    let d = q.vertices[ar.head].sub(&q.vertices[ar.tail]);
    let i = d.coords.iter().position(|c| !c.is_zero()).map_or(0, |i| i + 1);
    format!("a{i}_{}", q.vertices[ar.tail])
}

pub fn p1xp1_report() -> Result<String> {
    let p = p1xp1_parabolic()?;
    let (lo, hi) = (-3, 3);
    let q = build_quiver_with_relations(&p, &VertexWindow::cube(2, lo, hi))?;
    let ctx = ParamContext::new(&p, &EpsilonSet::uniform(&p, rat(1)))?;
    let mut s = String::new();
    writeln!(s, "# P1 x P1 = (SL(2) x SL(2))/B, group A1xA1, Sigma = {{a1,a2}}").ok();
    writeln!(s, "# window: lambda in [{lo},{hi}]^2; status {}", q.status).ok();
    let comps = components(&q);
    writeln!(s, "vertices {}  arrows {}  relations {}  components {}", q.vertices.len(), q.arrows.len(), q.relations.len(), comps.len()).ok();
    writeln!(s, "\n## grid: component parity of lambda1 + lambda2 (rows lambda2 from {hi} down)").ok();
    for l2 in (lo..=hi).rev() {
        let row: Vec<String> = (lo..=hi).map(|l1| ((l1 + l2).rem_euclid(2)).to_string()).collect();
        writeln!(s, "{:>3} | {}", l2, row.join(" ")).ok();
    }
    writeln!(s, "\n## arrows a_i: lambda -> lambda - 2L_i").ok();
    for a in &q.arrows {
        writeln!(s, "{}: {} -> {}", p1_label(&q, a.id), q.vertices[a.tail], q.vertices[a.head]).ok();
    }
    writeln!(s, "\n## relations r^(2,1)_lambda (paths in traversal order)").ok();
    for r in &q.relations {
        let start = q.arrow(r.terms[0].path[0]).tail;
        writeln!(s, "r_{} = {}", q.vertices[start], relation_text(r, |a| p1_label(&q, a))).ok();
    }
    writeln!(s, "\n## slopes (eps = (1,1)) and tau' for tau = 0").ok();
    let zero: BTreeMap<Weight, Rational> = q.vertices.iter().map(|v| (v.clone(), Rational::zero())).collect();
    let tp = ctx.tau_to_tauprime(&zero)?;
    for v in &q.vertices {
        writeln!(s, "{:>8} slope {:>3} tau' {:>3}", v.to_string(), format_rational(&ctx.slope(v)?), format_rational(&tp[v])).ok();
    }
    Ok(s)
}

/// The Borel of `SL(3)`.
pub fn borel_a2_parabolic() -> Result<ParabolicDatum> {
    parabolic("A2", &[0, 1])
}

pub fn borel_a2_report() -> Result<String> {
    let p = borel_a2_parabolic()?;
    let q = build_quiver_with_relations(&p, &VertexWindow::cube(2, -2, 2))?;
    let rs = &p.rs;
    let mut s = String::new();
    writeln!(s, "# Borel of SL(3), group A2, Sigma = {{a1,a2}}; window [-2,2]^2; status {}", q.status).ok();
    writeln!(s, "vertices {}  arrows {}  relations {}", q.vertices.len(), q.arrows.len(), q.relations.len()).ok();
    writeln!(s, "\n## nilradical roots (simple coords, fw coords)").ok();
    for &g in &p.nilradical {
        let r = rs.root(g);
        writeln!(s, "gamma{g}: {} {}", r, Weight::from(r.fw_coords.clone())).ok();
    }
    writeln!(s, "\n## Chevalley constants N(gamma, gamma') on the nilradical").ok();
    for (x, &g) in p.nilradical.iter().enumerate() {
        for &g2 in &p.nilradical[x + 1..] {
            writeln!(s, "N(gamma{g}, gamma{g2}) = {}", rs.chevalley(g, g2)).ok();
        }
    }
    let label = |a: usize| format!("a{a}");
    writeln!(s, "\n## arrows").ok();
    for a in &q.arrows {
        writeln!(s, "a{}: {} -> {}", a.id, q.vertices[a.tail], q.vertices[a.head]).ok();
    }
    writeln!(s, "\n## relations (paths in traversal order)").ok();
    for r in &q.relations {
        let start = q.arrow(r.terms[0].path[0]).tail;
        writeln!(s, "at {}: {}", q.vertices[start], relation_text(r, label)).ok();
    }
    writeln!(s, "\n## relations evaluated on sl3 modules, phi_a = -rho(e_gamma)").ok();
    let model = sl_matrix_model(rs)?;
    for m in SlModule::ALL {
        let (weights, ops) = sl_module(rs, &model, m)?;
        let rep = module_rep(&p, &q, &weights, &ops)?;
        let bad = check_relations(&rep)?;
        writeln!(s, "{:<14} dim {}  relations {}  violations {}", m.name(), weights.len(), q.relations.len(), bad.len()).ok();
    }
    Ok(s)
}

pub fn triple_report() -> Result<String> {
    let p = parabolic("A1", &[0])?;
    let (r0, r1) = (2i64, 1i64);
    let (d0, d1) = (rat(1), rat(0));
    let tp0 = rat(3);
    let eps = triple_epsilon(r0, r1, &d0, &d1, &tp0)?;
    let ctx = ParamContext::new(&p, &EpsilonSet::uniform(&p, eps.clone()))?;
    let (v0, v1) = (Weight::from_ints(&[0]), Weight::from_ints(&[2]));
    let tau: BTreeMap<Weight, Rational> = [(v0.clone(), tp0.clone()), (v1.clone(), tp0.clone())].into();
    let tp = ctx.tau_to_tauprime(&tau)?;
    let sigma = ctx.tauprime_to_sigma(&tp, &[v0.clone(), v1.clone()])?;
    let q = Quiver::from_parts(vec![v0.clone(), v1.clone()], &[(1, 0)]);
    let chain = chain_vortex_residual(&q, None)?;
    let mut s = String::new();
    writeln!(s, "# holomorphic triple E1 -> E0 on X x P1, weights 0 and 2").ok();
    writeln!(s, "\n## chain vortex equations").ok();
    for e in &chain.equations {
        writeln!(s, "{}", e).ok();
    }
    writeln!(s, "\n## parameters").ok();
    writeln!(s, "rk E0 = {r0}, rk E1 = {r1}, deg E0 = {}, deg E1 = {}", format_rational(&d0), format_rational(&d1)).ok();
    writeln!(s, "tau'_0 = {}", format_rational(&tp0)).ok();
    writeln!(s, "2/eps = ((rk E0 + rk E1) tau'_0 - (deg E0 + deg E1)) / rk E1 = {}", format_rational(&(rat(2) / &eps))).ok();
    writeln!(s, "eps = {}", format_rational(&eps)).ok();
    writeln!(s, "tau_0 = tau_1 = {}  (sigma_0 = 0)", format_rational(&tp0)).ok();
    writeln!(s, "tau'_0 = {}, tau'_1 = {}", format_rational(&tp[&v0]), format_rational(&tp[&v1])).ok();
    writeln!(s, "tau'_0 - tau'_1 = {}", format_rational(&(&tp[&v0] - &tp[&v1]))).ok();
    writeln!(s, "sigma recovered: {}", sigma.iter().map(format_rational).collect::<Vec<_>>().join(", ")).ok();
    let lhs = &tp[&v0] * rat(r0) + &tp[&v1] * rat(r1);
    writeln!(s, "constraint: tau'_0 rk E0 + tau'_1 rk E1 = {} = deg E0 + deg E1 = {}", format_rational(&lhs), format_rational(&(&d0 + &d1))).ok();
    Ok(s)
}

/// Matrices `e_α` for every root of `A_n` in the defining representation,
/// signed so that `[e_α, e_β] = N_{αβ} e_{α+β}` with the crate's constants.
///
/// Every bracket and every `[e_α, e_{−α}] = h_α` is verified.
pub fn sl_matrix_model(rs: &RootSystem) -> Result<BTreeMap<usize, QMat>> {
    let [(Series::A, n)] = rs.spec.factors[..] else {
        return Err(Error::Domain("the matrix model is implemented for a single A_n factor".into()));
    };
    let dim = n + 1;
    let unit = |i: usize, j: usize| {
        let mut m = QMat::zeros(dim, dim);
        m.set(i, j, Rational::one());
        m
    };
    let span = |c: &[i64]| -> Option<(usize, usize)> {
        let nz: Vec<usize> = (0..c.len()).filter(|&k| c[k] != 0).collect();
        let (&lo, &hi) = (nz.first()?, nz.last()?);
        let sign = c[lo];
        ((lo..=hi).all(|k| c[k] == sign) && sign.abs() == 1).then_some(if sign > 0 { (lo, hi + 1) } else { (hi + 1, lo) })
    };
    let mut sign: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut pos: Vec<usize> = (0..rs.num_positive()).collect();
    pos.sort_by_key(|&i| rs.root(i).height());
    for &g in &pos {
        let r = rs.root(g);
        if r.height() == 1 {
            sign.insert(g, Rational::one());
            continue;
        }
        let (a, b) = (0..rs.rank())
            .map(|i| rs.simple_index(i))
            .find_map(|a| {
                let c: Vec<i64> = r.simple_coords.iter().zip(&rs.root(a).simple_coords).map(|(x, y)| x - y).collect();
                rs.root_index(&c).filter(|&b| b < rs.num_positive()).map(|b| (a, b))
            })
            .ok_or_else(|| Error::Domain(format!("root {r} has no simple decomposition")))?;
        let (ia, ja) = span(&rs.root(a).simple_coords).expect("A_n root");
        let (ib, jb) = span(&rs.root(b).simple_coords).expect("A_n root");
        let ea = unit(ia, ja);
        let eb = unit(ib, jb);
        let br = commutator(&ea, &eb)?;
        let (ig, jg) = span(&r.simple_coords).expect("A_n root");
        let c = br.get(ig, jg).clone();
        let nab = rat(rs.chevalley(a, b));
        sign.insert(g, &sign[&a] * &sign[&b] * c / nab);
    }
    let mut out = BTreeMap::new();
    for g in 0..rs.num_roots() {
        let r = rs.root(g);
        let (i, j) = span(&r.simple_coords).ok_or_else(|| Error::Domain(format!("unexpected root {r}")))?;
        let s = if g < rs.num_positive() { sign[&g].clone() } else { sign[&rs.negate_index(g)].clone() };
        let mut m = unit(i, j);
        m = scale(&m, &s);
        out.insert(g, m);
    }
    verify_model(rs, &out, n)?;
    Ok(out)
}

fn scale(m: &QMat, s: &Rational) -> QMat {
    let mut z = QMat::zeros(m.rows, m.cols);
    z.add_scaled(m, s).expect("same shape");
    z
}

fn commutator(a: &QMat, b: &QMat) -> Result<QMat> {
    let mut c = a.mul(b)?;
    c.add_scaled(&b.mul(a)?, &-Rational::one())?;
    Ok(c)
}

/// `L_k` in fundamental-weight coordinates of `A_n` (zero-based `k`).
fn basis_weight(n: usize, k: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    if k < n {
        w[k] += 1;
    }
    if k > 0 {
        w[k - 1] -= 1;
    }
    w
}

fn verify_model(rs: &RootSystem, e: &BTreeMap<usize, QMat>, n: usize) -> Result<()> {
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            let br = commutator(&e[&a], &e[&b])?;
            let expect = if b == rs.negate_index(a) {
                let c = rs.coroot_coords(rs.root(a));
                let mut h = QMat::zeros(n + 1, n + 1);
                for k in 0..=n {
                    let v: i64 = basis_weight(n, k).iter().zip(&c).map(|(x, y)| x * y).sum();
                    h.set(k, k, rat(v));
                }
                h
            } else {
                match rs.sum_index(a, b) {
                    Some(s) => scale(&e[&s], &rat(rs.chevalley(a, b))),
                    None => QMat::zeros(n + 1, n + 1),
                }
            };
            if br != expect {
                return Err(Error::Domain(format!("matrix model disagrees with N at roots {} and {}", rs.root(a), rs.root(b))));
            }
        }
    }
    Ok(())
}

/// Small `sl_{n+1}`-modules built from the defining representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlModule {
    Standard,
    Dual,
    Sym2,
    Sym2Dual,
    StandardPlusDual,
}

impl SlModule {
    pub const ALL: [SlModule; 5] =
        [SlModule::Standard, SlModule::Dual, SlModule::Sym2, SlModule::Sym2Dual, SlModule::StandardPlusDual];

    pub fn name(&self) -> &'static str {
        match self {
            SlModule::Standard => "standard",
            SlModule::Dual => "dual",
            SlModule::Sym2 => "sym2",
            SlModule::Sym2Dual => "sym2-dual",
            SlModule::StandardPlusDual => "standard+dual",
        }
    }
}

fn dual_ops(ops: &BTreeMap<usize, QMat>) -> BTreeMap<usize, QMat> {
    ops.iter()
        .map(|(&g, m)| {
            let mut t = QMat::zeros(m.cols, m.rows);
            for i in 0..m.rows {
                for j in 0..m.cols {
                    t.set(j, i, -m.get(i, j).clone());
                }
            }
            (g, t)
        })
        .collect()
}

fn sym2_ops(ops: &BTreeMap<usize, QMat>, d: usize) -> (Vec<(usize, usize)>, BTreeMap<usize, QMat>) {
    let basis: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| basis.iter().position(|&(a, b)| (a, b) == (i.min(j), i.max(j))).expect("pair");
    let out = ops
        .iter()
        .map(|(&g, m)| {
            let mut s = QMat::zeros(basis.len(), basis.len());
            for (c, &(i, j)) in basis.iter().enumerate() {
                // X(e_i e_j) = (X e_i) e_j + e_i (X e_j)
                for k in 0..d {
                    let x = m.get(k, i).clone();
                    if !x.is_zero() {
                        let r = idx(k, j);
                        let v = s.get(r, c) + x;
                        s.set(r, c, v);
                    }
                    let y = m.get(k, j).clone();
                    if !y.is_zero() {
                        let r = idx(i, k);
                        let v = s.get(r, c) + y;
                        s.set(r, c, v);
                    }
                }
            }
            (g, s)
        })
        .collect();
    (basis, out)
}

fn block_sum(a: &BTreeMap<usize, QMat>, b: &BTreeMap<usize, QMat>) -> BTreeMap<usize, QMat> {
    a.iter()
        .map(|(&g, x)| {
            let y = &b[&g];
            let mut m = QMat::zeros(x.rows + y.rows, x.cols + y.cols);
            for i in 0..x.rows {
                for j in 0..x.cols {
                    m.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..y.rows {
                for j in 0..y.cols {
                    m.set(x.rows + i, x.cols + j, y.get(i, j).clone());
                }
            }
            (g, m)
        })
        .collect()
}

/// Basis weights in fundamental-weight coordinates, and root operators by root index.
pub type ModuleData = (Vec<Vec<i64>>, BTreeMap<usize, QMat>);

/// Weights of a basis (fundamental-weight coordinates) and the root operators.
pub fn sl_module(rs: &RootSystem, model: &BTreeMap<usize, QMat>, m: SlModule) -> Result<ModuleData> {
    let n = rs.rank();
    let d = n + 1;
    let std_w: Vec<Vec<i64>> = (0..d).map(|k| basis_weight(n, k)).collect();
    let neg = |w: &Vec<i64>| w.iter().map(|x| -x).collect::<Vec<i64>>();
    let add = |a: &Vec<i64>, b: &Vec<i64>| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    Ok(match m {
        SlModule::Standard => (std_w, model.clone()),
        SlModule::Dual => (std_w.iter().map(neg).collect(), dual_ops(model)),
        SlModule::Sym2 => {
            let (basis, ops) = sym2_ops(model, d);
            (basis.iter().map(|&(i, j)| add(&std_w[i], &std_w[j])).collect(), ops)
        }
        SlModule::Sym2Dual => {
            let (basis, ops) = sym2_ops(&dual_ops(model), d);
            (basis.iter().map(|&(i, j)| neg(&add(&std_w[i], &std_w[j]))).collect(), ops)
        }
        SlModule::StandardPlusDual => {
            let mut w = std_w.clone();
            w.extend(std_w.iter().map(neg));
            (w, block_sum(model, &dual_ops(model)))
        }
    })
}

/// The quiver representation of a `p`-module: `V_λ` is the `λ`-weight space and
/// the arrow `λ → λ + γ` acts by `−ρ(e_γ)`.
pub fn module_rep(p: &ParabolicDatum, q: &Quiver, weights: &[Vec<i64>], ops: &BTreeMap<usize, QMat>) -> Result<QuiverRep> {
    let mut basis_at: Vec<Vec<usize>> = vec![Vec::new(); q.vertices.len()];
    for (b, w) in weights.iter().enumerate() {
        let v = q
            .vertex_index(&Weight::from(w.clone()))
            .ok_or_else(|| Error::Domain(format!("module weight {} lies outside the quiver window", Weight::from(w.clone()))))?;
        basis_at[v].push(b);
    }
    let dims: Vec<usize> = basis_at.iter().map(|b| b.len()).collect();
    let mut maps = Vec::with_capacity(q.arrows.len());
    for a in &q.arrows {
        let d = q.vertices[a.head].sub(&q.vertices[a.tail]).to_ints().expect("integral");
        let g = p
            .nilradical
            .iter()
            .copied()
            .find(|&g| p.rs.root(g).fw_coords == d)
            .ok_or_else(|| Error::Domain(format!("arrow {} is not labelled by a nilradical root", a.id)))?;
        let e = &ops[&g];
        let mut m = QMat::zeros(dims[a.head], dims[a.tail]);
        for (i, &r) in basis_at[a.head].iter().enumerate() {
            for (j, &c) in basis_at[a.tail].iter().enumerate() {
                m.set(i, j, -e.get(r, c).clone());
            }
        }
        maps.push(m);
    }
    QuiverRep::new(q.clone(), Field::Rational, dims, maps)
}

/// The `(1,1)` arrow representation with map `c` and `τ′ = (head: t, tail: −t)`;
/// returns the quiver rep with arrow `tail → head` and the per-vertex `τ′`.
pub fn arrow_fixture(c: i64, t: i64) -> Result<(QuiverRep, Vec<Rational>)> {
    let q = Quiver::from_parts(vec![Weight::from_ints(&[0]), Weight::from_ints(&[2])], &[(1, 0)]);
    let rep = QuiverRep::new(q, Field::Rational, vec![1, 1], vec![QMat::from_i64(&[vec![c]])])?;
    Ok((rep, vec![rat(t), rat(-t)]))
}
