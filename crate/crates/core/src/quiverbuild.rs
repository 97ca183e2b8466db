//! The quiver with relations attached to a parabolic datum on a finite window.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use num::{One, Zero};

use crate::charring::{tensor, CharEngine, CharacterMap, IsotypicDecomp};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicDatum;
use crate::weight::{rat, Rational, Weight};

pub mod export;

pub const STATUS_COMPLETE: &str = "complete";
pub const STATUS_UNSUPPORTED: &str = "unsupported-general-relations";
pub const STATUS_ARROWS_ONLY: &str = "arrows-only";

/// A finite slice of the (infinite) vertex set.
#[derive(Clone, Debug)]
pub enum VertexWindow {
    Explicit(Vec<Weight>),
    /// All dominant integral weights with `lo[i] ≤ λ_i ≤ hi[i]`.
    Box { lo: Vec<i64>, hi: Vec<i64> },
}

impl VertexWindow {
    /// The box `[lo, hi]^rank`.
    pub fn cube(rank: usize, lo: i64, hi: i64) -> Self {
        VertexWindow::Box { lo: vec![lo; rank], hi: vec![hi; rank] }
    }
}

/// How arrow multiplicities are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowMode {
    /// Closed form for Borel and simply-laced cases, character engine otherwise.
    Auto,
    /// Always use the character engine.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: usize,
    /// Vertex indices.
    pub tail: usize,
    pub head: usize,
    /// One-based index among parallel arrows.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    /// Arrow ids in traversal order.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

/// Dimensions of the isotypic spaces between two window vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDims {
    pub tail: usize,
    pub head: usize,
    pub a_dim: u64,
    pub b_dim: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryReport {
    /// Arrows with exactly one endpoint in the window: `(tail, head, multiplicity)`.
    pub dropped_arrows: Vec<(Vec<i64>, Vec<i64>, u64)>,
    /// Relations from a window vertex whose paths leave the window.
    pub truncated_relations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Weight>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub status: String,
    pub boundary: BoundaryReport,
    pub dim_table: Vec<PairDims>,
    /// Group and `Σ` the quiver was built from, if any.
    pub group: Option<String>,
    pub sigma: Option<Vec<usize>>,
}

impl Quiver {
    /// A quiver with the given vertices and `(tail, head)` arrows, numbered in order.
    pub fn from_parts(vertices: Vec<Weight>, arrows: &[(usize, usize)]) -> Self {
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(id, &(t, h))| {
                let c = count.entry((t, h)).or_insert(0);
                *c += 1;
                Arrow { id, tail: t, head: h, index: *c }
            })
            .collect();
        Quiver {
            vertices,
            arrows,
            relations: Vec::new(),
            status: STATUS_ARROWS_ONLY.into(),
            boundary: BoundaryReport::default(),
            dim_table: Vec::new(),
            group: None,
            sigma: None,
        }
    }

    pub fn vertex_index(&self, w: &Weight) -> Option<usize> {
        self.vertices.iter().position(|v| v == w)
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    /// Ids of the arrows from `tail` to `head`.
    pub fn arrows_between(&self, tail: usize, head: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.tail == tail && a.head == head).map(|a| a.id).collect()
    }

    pub fn relations_stripped(&self) -> Quiver {
        Quiver { relations: Vec::new(), ..self.clone() }
    }
}

fn window_vertices(p: &ParabolicDatum, w: &VertexWindow) -> Result<Vec<Vec<i64>>> {
    let rank = p.rank();
    let mut out = match w {
        VertexWindow::Explicit(list) => {
            let mut v = Vec::new();
            for x in list {
                if !p.is_dominant(x)? {
                    return Err(Error::Domain(format!("window vertex {x} is not dominant for P")));
                }
                v.push(x.to_ints().ok_or_else(|| Error::Domain(format!("weight {x} too large")))?);
            }
            v
        }
        VertexWindow::Box { lo, hi } => {
            if lo.len() != rank || hi.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: lo.len().min(hi.len()) });
            }
            let mut v = Vec::new();
            let mut cur = lo.clone();
            if lo.iter().zip(hi).any(|(a, b)| a > b) {
                return Ok(v);
            }
            loop {
                if p.is_dominant_int(&cur) {
                    v.push(cur.clone());
                }
                let mut i = 0;
                loop {
                    if i == rank {
                        return Ok(dedup_sorted(v));
                    }
                    if cur[i] < hi[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = lo[i];
                    i += 1;
                }
            }
        }
    };
    out = dedup_sorted(out);
    Ok(out)
}

fn dedup_sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v.dedup();
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Whether arrow counts have the closed form `n_{μλ} = [μ − λ ∈ Δ(u)]`.
pub fn has_closed_form_arrows(p: &ParabolicDatum) -> bool {
    p.is_borel() || p.rs.spec.is_simply_laced()
}

struct Builder<'a> {
    p: &'a ParabolicDatum,
    engine: CharEngine,
    u_char: CharacterMap,
}

impl Builder<'_> {
    fn new(p: &ParabolicDatum) -> Builder<'_> {
        let engine = CharEngine::new(p);
        let mut u_char = CharacterMap::new(engine.levi_tag());
        for &i in &p.nilradical {
            u_char.add(p.rs.root(i).fw_coords.clone(), 1);
        }
        Builder { p, engine, u_char }
    }

    /// Decomposition of `u ⊗ M_λ`: heads of arrows out of `λ`.
    fn out_table(&self, lambda: &[i64]) -> Result<IsotypicDecomp> {
        self.engine.decompose(&tensor(&self.u_char, &self.engine.character_int(lambda))?)
    }

    fn out_arrows(&self, lambda: &[i64], mode: ArrowMode) -> Result<Vec<(Vec<i64>, u64)>> {
        if mode == ArrowMode::Auto && has_closed_form_arrows(self.p) {
            let mut v: Vec<(Vec<i64>, u64)> = self
                .p
                .nilradical
                .iter()
                .map(|&g| add(lambda, &self.p.rs.root(g).fw_coords))
                .filter(|mu| self.p.is_dominant_int(mu))
                .map(|mu| (mu, 1))
                .collect();
            v.sort();
            Ok(v)
        } else {
            Ok(self.out_table(lambda)?.summands.into_iter().collect())
        }
    }

    fn in_arrows(&self, mu: &[i64], mode: ArrowMode) -> Result<Vec<(Vec<i64>, u64)>> {
        if mode == ArrowMode::Auto && has_closed_form_arrows(self.p) {
            let mut v: Vec<(Vec<i64>, u64)> = self
                .p
                .nilradical
                .iter()
                .map(|&g| sub(mu, &self.p.rs.root(g).fw_coords))
                .filter(|l| self.p.is_dominant_int(l))
                .map(|l| (l, 1))
                .collect();
            v.sort();
            Ok(v)
        } else {
            Ok(self.engine.a_table(mu)?.summands.iter().map(|(k, &m)| (k.clone(), m)).collect())
        }
    }
}

/// Builds vertices and arrows; relations are filled in by [`build_relations`].
pub fn build_quiver(p: &ParabolicDatum, w: &VertexWindow) -> Result<Quiver> {
    build_quiver_with(p, w, ArrowMode::Auto)
}

pub fn build_quiver_with(p: &ParabolicDatum, w: &VertexWindow, mode: ArrowMode) -> Result<Quiver> {
    let verts = window_vertices(p, w)?;
    let pos: HashMap<Vec<i64>, usize> = verts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let b = Builder::new(p);
    let mut arrows = Vec::new();
    let mut boundary = BoundaryReport::default();
    for (t, lambda) in verts.iter().enumerate() {
        for (mu, m) in b.out_arrows(lambda, mode)? {
            match pos.get(&mu) {
                Some(&h) => {
                    for k in 1..=m as usize {
                        arrows.push(Arrow { id: 0, tail: t, head: h, index: k });
                    }
                }
                None => boundary.dropped_arrows.push((lambda.clone(), mu, m)),
            }
        }
        for (tail, m) in b.in_arrows(lambda, mode)? {
            if !pos.contains_key(&tail) {
                boundary.dropped_arrows.push((tail, lambda.clone(), m));
            }
        }
    }
    arrows.sort_by_key(|a| (a.tail, a.head, a.index));
    for (i, a) in arrows.iter_mut().enumerate() {
        a.id = i;
    }
    boundary.dropped_arrows.sort();
    let mut dim_table = Vec::new();
    for (h, mu) in verts.iter().enumerate() {
        let a = b.in_arrows(mu, mode)?;
        let bt = b.engine.b_table(mu)?;
        let mut tails: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
        for (l, m) in a {
            if let Some(&t) = pos.get(&l) {
                tails.entry(t).or_default().0 = m;
            }
        }
        for (l, &m) in bt.summands.iter() {
            if let Some(&t) = pos.get(l) {
                tails.entry(t).or_default().1 = m;
            }
        }
        for (t, (a_dim, b_dim)) in tails {
            dim_table.push(PairDims { tail: t, head: h, a_dim, b_dim });
        }
    }
    dim_table.sort_by_key(|d| (d.tail, d.head));
    Ok(Quiver {
        vertices: verts.into_iter().map(Weight::from).collect(),
        arrows,
        relations: Vec::new(),
        status: STATUS_ARROWS_ONLY.into(),
        boundary,
        dim_table,
        group: Some(p.rs.spec.to_string()),
        sigma: Some(p.sigma.clone()),
    })
}

/// Builds the quiver together with its relations.
pub fn build_quiver_with_relations(p: &ParabolicDatum, w: &VertexWindow) -> Result<Quiver> {
    let q = build_quiver(p, w)?;
    build_relations(p, &q)
}

/// Populates the relations of `q` where a closed form is available.
///
/// Borel case: for `λ` and roots `γ ≺ γ′` of `Δ(u)`,
/// `r = a^{γ′}a^{γ} − a^{γ}a^{γ′} − N_{γγ′} a^{γ+γ′}`, where `a^{γ′}a^{γ}`
/// traverses `a^{γ}` first. Abelian nilradical with simple arrows: the
/// commuting square through `λ + γ` and `λ + γ′`, keeping only the paths
/// whose middle vertex is dominant.
pub fn build_relations(p: &ParabolicDatum, q: &Quiver) -> Result<Quiver> {
    let mut out = q.clone();
    out.relations.clear();
    out.boundary.truncated_relations = 0;
    let pos: HashMap<Vec<i64>, usize> = q
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.to_ints().map(|k| (k, i)))
        .collect();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for a in &q.arrows {
        by_pair.entry((a.tail, a.head)).or_default().push(a.id);
    }
    let simple_arrows = by_pair.values().all(|v| v.len() == 1);
    let nil_weights: Vec<Vec<i64>> = p.nilradical.iter().map(|&g| p.rs.root(g).fw_coords.clone()).collect();
    let diffs_in_u = q.arrows.iter().all(|a| {
        let d = q.vertices[a.head].sub(&q.vertices[a.tail]);
        d.to_ints().is_some_and(|d| nil_weights.contains(&d))
    });
    let single = |t: usize, h: usize| -> Option<usize> {
        by_pair.get(&(t, h)).and_then(|v| if v.len() == 1 { Some(v[0]) } else { None })
    };

    if p.nilradical.is_empty() {
        out.status = STATUS_COMPLETE.into();
        return Ok(out);
    }
    if p.is_borel() {
        let rs = &p.rs;
        for (t, lam) in q.vertices.iter().enumerate() {
            let lam = lam.to_ints().expect("integral vertex");
            for (x, &g) in p.nilradical.iter().enumerate() {
                for &g2 in &p.nilradical[x + 1..] {
                    let gw = &rs.root(g).fw_coords;
                    let g2w = &rs.root(g2).fw_coords;
                    let mu = add(&add(&lam, gw), g2w);
                    let Some(&h) = pos.get(&mu) else {
                        out.boundary.truncated_relations += 1;
                        continue;
                    };
                    let nu = add(&lam, gw);
                    let nu2 = add(&lam, g2w);
                    let path1 = pos.get(&nu).and_then(|&v| Some(vec![single(t, v)?, single(v, h)?]));
                    let path2 = pos.get(&nu2).and_then(|&v| Some(vec![single(t, v)?, single(v, h)?]));
                    let n = rs.chevalley(g, g2);
                    let direct = if n != 0 { single(t, h).map(|a| vec![a]) } else { Some(Vec::new()) };
                    match (path1, path2, direct) {
                        (Some(p1), Some(p2), Some(d)) => {
                            let mut terms = vec![Term { coeff: Rational::one(), path: p1 }, Term { coeff: -Rational::one(), path: p2 }];
                            if n != 0 {
                                terms.push(Term { coeff: rat(-n), path: d });
                            }
                            out.relations.push(Relation { terms });
                        }
                        _ => out.boundary.truncated_relations += 1,
                    }
                }
            }
        }
        out.status = STATUS_COMPLETE.into();
        return Ok(out);
    }
    if !(p.nilradical_is_abelian() && simple_arrows && diffs_in_u) {
        out.status = STATUS_UNSUPPORTED.into();
        return Ok(out);
    }
    let engine = CharEngine::new(p);
    // Pair orientation: the root of larger height magnitude first.
    let mut order: Vec<usize> = p.nilradical.clone();
    order.sort_by_key(|&g| (p.rs.root(g).height(), g));
    let mut emitted: HashMap<(usize, usize), u64> = HashMap::new();
    let mut truncated: HashMap<(usize, usize), u64> = HashMap::new();
    for (t, lam) in q.vertices.iter().enumerate() {
        let lam = lam.to_ints().expect("integral vertex");
        for (x, &g) in order.iter().enumerate() {
            for &g2 in &order[x + 1..] {
                let gw = &p.rs.root(g).fw_coords;
                let g2w = &p.rs.root(g2).fw_coords;
                let mu = add(&add(&lam, gw), g2w);
                if !p.is_dominant_int(&mu) || engine.b_dim_int(&mu, &lam)? == 0 {
                    continue;
                }
                let Some(&h) = pos.get(&mu) else {
                    out.boundary.truncated_relations += 1;
                    continue;
                };
                let mut terms = Vec::new();
                let mut cut = false;
                for (first, coeff) in [(gw, Rational::one()), (g2w, -Rational::one())] {
                    let nu = add(&lam, first);
                    if !p.is_dominant_int(&nu) {
                        continue;
                    }
                    match pos.get(&nu).and_then(|&v| Some(vec![single(t, v)?, single(v, h)?])) {
                        Some(path) => terms.push(Term { coeff, path }),
                        None => cut = true,
                    }
                }
                if cut {
                    out.boundary.truncated_relations += 1;
                    *truncated.entry((t, h)).or_default() += 1;
                } else if !terms.is_empty() {
                    out.relations.push(Relation { terms });
                    *emitted.entry((t, h)).or_default() += 1;
                }
            }
        }
    }
    // Relation counts must match dim B_{μλ} on every window pair.
    let mut consistent = true;
    for d in &q.dim_table {
        let e = emitted.get(&(d.tail, d.head)).copied().unwrap_or(0) + truncated.get(&(d.tail, d.head)).copied().unwrap_or(0);
        if e != d.b_dim {
            consistent = false;
        }
    }
    for (&(t, h), &e) in &emitted {
        let b = engine.b_dim_int(&q.vertices[h].to_ints().unwrap(), &q.vertices[t].to_ints().unwrap())?;
        if b != e {
            consistent = false;
        }
    }
    if consistent {
        out.status = STATUS_COMPLETE.into();
    } else {
        out.relations.clear();
        out.status = STATUS_UNSUPPORTED.into();
    }
    Ok(out)
}

/// A topological order of the vertices, or the cycle that prevents one.
///
/// Among available vertices the one with the largest `key` is taken first.
pub fn check_directed_by<K: Ord + Clone>(q: &Quiver, key: impl Fn(usize) -> K) -> Result<Vec<usize>> {
    let n = q.vertices.len();
    let mut indeg = vec![0usize; n];
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &q.arrows {
        indeg[a.head] += 1;
        out_adj[a.tail].push(a.head);
    }
    let mut heap: BinaryHeap<(K, Reverse<usize>)> =
        (0..n).filter(|&v| indeg[v] == 0).map(|v| (key(v), Reverse(v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, Reverse(v))) = heap.pop() {
        order.push(v);
        for &h in &out_adj[v] {
            indeg[h] -= 1;
            if indeg[h] == 0 {
                heap.push((key(h), Reverse(h)));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    Err(Error::Cycle(find_cycle(&out_adj, &indeg)))
}

/// A topological order with ties broken by vertex index.
pub fn check_directed(q: &Quiver) -> Result<Vec<usize>> {
    check_directed_by(q, Reverse)
}

/// A topological order listing vertices in descending [`ParabolicDatum::vertex_compare`] order.
pub fn check_directed_for(p: &ParabolicDatum, q: &Quiver) -> Result<Vec<usize>> {
    let keys: Vec<(Rational, Weight)> = q
        .vertices
        .iter()
        .map(|v| (p.sigma_height(v).unwrap_or_else(|_| Rational::zero()), v.clone()))
        .collect();
    check_directed_by(q, |v| keys[v].clone())
}

fn find_cycle(adj: &[Vec<usize>], indeg: &[usize]) -> Vec<usize> {
    // Vertices left with positive in-degree all lie on or behind a cycle.
    let alive: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let n = adj.len();
    let mut color = vec![0u8; n];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(v: usize, adj: &[Vec<usize>], alive: &[bool], color: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        color[v] = 1;
        stack.push(v);
        for &h in &adj[v] {
            if !alive[h] {
                continue;
            }
            if color[h] == 1 {
                let start = stack.iter().position(|&x| x == h).unwrap();
                return Some(stack[start..].to_vec());
            }
            if color[h] == 0 {
                if let Some(c) = dfs(h, adj, alive, color, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        color[v] = 2;
        None
    }
    for v in 0..n {
        if alive[v] && color[v] == 0 {
            if let Some(c) = dfs(v, adj, &alive, &mut color, &mut stack) {
                return c;
            }
        }
    }
    Vec::new()
}

/// Connected components of the underlying undirected graph, each sorted,
/// listed by smallest vertex.
pub fn components(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in &q.arrows {
        let (x, y) = (find(&mut parent, a.tail), find(&mut parent, a.head));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

/// Orders the support of an isotypic decomposition ascending, `λ_0 < λ_1 < … < λ_m`.
pub fn filtration_order(p: &ParabolicDatum, support: &BTreeMap<Weight, u64>) -> Result<Vec<(Weight, u64)>> {
    let mut v: Vec<(Weight, u64)> = Vec::with_capacity(support.len());
    for (w, &m) in support {
        if !p.is_dominant(w)? {
            return Err(Error::Domain(format!("weight {w} is not dominant for P")));
        }
        if m > 0 {
            v.push((w.clone(), m));
        }
    }
    v.sort_by(|a, b| p.vertex_compare(&a.0, &b.0));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::build_parabolic;
    use crate::rootsys::build_root_system;

    fn par(g: &str, sigma: &[usize]) -> ParabolicDatum {
        build_parabolic(&build_root_system(g.parse().unwrap()).unwrap(), sigma).unwrap()
    }

    #[test]
    fn a1_borel_chain() {
        let p = par("A1", &[0]);
        let q = build_quiver_with_relations(&p, &VertexWindow::cube(1, -3, 3)).unwrap();
        assert_eq!(q.vertices.len(), 7);
        assert_eq!(q.arrows.len(), 5);
        for a in &q.arrows {
            assert_eq!(q.vertices[a.head].sub(&q.vertices[a.tail]), Weight::from_ints(&[-2]));
        }
        assert!(q.relations.is_empty());
        assert_eq!(q.boundary.dropped_arrows.len(), 4);
        assert_eq!(q.status, STATUS_COMPLETE);
    }

    #[test]
    fn two_cycle_is_detected() {
        let q = Quiver::from_parts(vec![Weight::from_ints(&[0]), Weight::from_ints(&[1])], &[(0, 1), (1, 0)]);
        match check_directed(&q) {
            Err(Error::Cycle(c)) => assert_eq!(c.len(), 2),
            other => panic!("expected a cycle, got {other:?}"),
        }
        let single = Quiver::from_parts(vec![Weight::from_ints(&[0])], &[]);
        assert_eq!(check_directed(&single).unwrap(), vec![0]);
    }

    #[test]
    fn explicit_window_rejects_non_dominant() {
        let p = par("A2", &[1]);
        let w = VertexWindow::Explicit(vec![Weight::from_ints(&[-1, 0])]);
        assert!(build_quiver(&p, &w).is_err());
    }

    #[test]
    fn empty_sigma_has_no_arrows() {
        let p = par("A2", &[]);
        let q = build_quiver_with_relations(&p, &VertexWindow::cube(2, 0, 2)).unwrap();
        assert_eq!(q.vertices.len(), 9);
        assert!(q.arrows.is_empty());
        assert_eq!(components(&q).len(), 9);
    }

    #[test]
    fn filtration_sorted_ascending() {
        let p = par("A1", &[0]);
        let support: BTreeMap<Weight, u64> =
            [(Weight::from_ints(&[4]), 1), (Weight::from_ints(&[0]), 2), (Weight::from_ints(&[2]), 1)].into();
        let f = filtration_order(&p, &support).unwrap();
        let coords: Vec<i64> = f.iter().map(|(w, _)| w.to_ints().unwrap()[0]).collect();
        assert_eq!(coords, vec![0, 2, 4]);
    }
}
