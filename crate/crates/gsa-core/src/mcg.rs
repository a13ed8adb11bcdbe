//! The Out⁺(F₂) ≅ SL₂(ℤ) action on classes of generating pairs.
//!
//! The move alphabet is {U, V} with U: (x, y) -> (x, x·y) and
//! V: (x, y) -> (y, x⁻¹); abelianized, M_U = T = [[1,1],[0,1]] and
//! M_V = [[0,-1],[1,0]]. Every other element needed is realized as a move
//! word: -I = V², S (on the ± space) = V, and the order-3 element T⁻¹S as
//! the word U⁻¹V. Orbits of the move action are the connected components
//! of the moduli of elliptic curves with G-structures; each component's
//! data (signature, stabilizer generators, monodromy) is read off the
//! orbit graph.
//!
//! Word-to-matrix convention: a word applied left to right multiplies left
//! to right, matching the right action on classes. All reported fields are
//! insensitive to mirroring this convention (tests pin that down).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::epi::{EpiClass, EpiContext};
use crate::error::{Error, Result};
use crate::group::{classify_generated, point_orbit, AltSym};
use crate::perm::{Perm, Point};

/// The two Nielsen moves and their inverses, in the fixed traversal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    U,
    V,
    UInv,
    VInv,
}

pub const MOVES: [Move; 4] = [Move::U, Move::V, Move::UInv, Move::VInv];

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::U => Move::UInv,
            Move::UInv => Move::U,
            Move::V => Move::VInv,
            Move::VInv => Move::V,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Move::U => 0,
            Move::V => 1,
            Move::UInv => 2,
            Move::VInv => 3,
        }
    }

    /// Image of a raw pair under the move.
    pub fn apply_raw(self, x: &Perm, y: &Perm) -> (Perm, Perm) {
        match self {
            Move::U => (x.clone(), x.compose(y)),
            Move::UInv => (x.clone(), x.inverse().compose(y)),
            Move::V => (y.clone(), x.inverse()),
            Move::VInv => (y.inverse(), x.clone()),
        }
    }

    /// Abelianized matrix of the move.
    pub fn matrix(self) -> Mat2 {
        match self {
            Move::U => Mat2::from_i64(1, 1, 0, 1),
            Move::UInv => Mat2::from_i64(1, -1, 0, 1),
            Move::V => Mat2::from_i64(0, -1, 1, 0),
            Move::VInv => Mat2::from_i64(0, 1, -1, 0),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::U => write!(f, "U"),
            Move::V => write!(f, "V"),
            Move::UInv => write!(f, "U'"),
            Move::VInv => write!(f, "V'"),
        }
    }
}

/// A 2x2 integer matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn identity() -> Mat2 {
        Mat2::from_i64(1, 0, 0, 1)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inverse_unimodular(&self) -> Mat2 {
        debug_assert!(self.det().is_one());
        Mat2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Entries reduced into 0..n.
    pub fn reduce_mod(&self, n: u64) -> [u64; 4] {
        let m = BigInt::from(n);
        let red = |v: &BigInt| -> u64 {
            let mut r = v % &m;
            if r.is_negative() {
                r += &m;
            }
            u64::try_from(r).unwrap()
        };
        [red(&self.a), red(&self.b), red(&self.c), red(&self.d)]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Matrix of a move word under the fixed composition convention.
pub fn word_matrix(word: &[Move]) -> Mat2 {
    word.iter()
        .fold(Mat2::identity(), |acc, m| acc.mul(&m.matrix()))
}

/// Matrix of a move word under the mirrored (reversed-product) convention;
/// used only to pin down convention insensitivity in tests.
pub fn word_matrix_mirrored(word: &[Move]) -> Mat2 {
    word.iter()
        .rev()
        .fold(Mat2::identity(), |acc, m| acc.mul(&m.matrix()))
}

/// Checks the move algebra once: U'U = V'V = 1, V² = -I, and the word U'V
/// realizes T⁻¹S = [[1,1],[-1,0]] up to sign. A failure is a build bug, so
/// this panics.
pub fn validate_move_algebra() {
    let t = Move::U.matrix();
    let t_inv = Move::UInv.matrix();
    let v = Move::V.matrix();
    let v_inv = Move::VInv.matrix();
    assert!(t_inv.mul(&t).is_identity());
    assert!(v_inv.mul(&v).is_identity());
    assert_eq!(v.mul(&v), Mat2::identity().neg());
    let j0 = word_matrix(&[Move::UInv, Move::V]);
    let t_inv_s = Mat2::from_i64(1, 1, -1, 0);
    assert!(j0 == t_inv_s || j0 == t_inv_s.neg());
}

/// Image of a class under a move, canonicalized.
pub fn apply_move(ctx: &EpiContext, e: &EpiClass, m: Move) -> EpiClass {
    let (x, y) = m.apply_raw(&e.x, &e.y);
    ctx.class_unchecked(&x, &y)
}

/// Image of a class under the inversion (x, y) -> (x⁻¹, y⁻¹); equals V².
pub fn apply_inversion(ctx: &EpiContext, e: &EpiClass) -> EpiClass {
    ctx.class_unchecked(&e.x.inverse(), &e.y.inverse())
}

/// Tree edge of the breadth-first Schreier tree.
#[derive(Clone, Copy, Debug)]
pub struct TreeEdge {
    pub parent: u32,
    pub mv: Move,
}

/// One orbit of the move action: a connected component of the moduli
/// space, with its Schreier graph.
pub struct OrbitComponent {
    /// Global indices into the enumerated class list, ascending; the base
    /// point is local index 0.
    pub points: Vec<usize>,
    /// Images under U, V, U⁻¹, V⁻¹ as local indices.
    pub edges: Vec<[u32; 4]>,
    /// Breadth-first tree: `None` at the base point.
    pub tree: Vec<Option<TreeEdge>>,
}

impl OrbitComponent {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Move word along the tree from the base point to a local point.
    pub fn word_to(&self, local: u32) -> Vec<Move> {
        let mut word = Vec::new();
        let mut p = local;
        while let Some(edge) = self.tree[p as usize] {
            word.push(edge.mv);
            p = edge.parent;
        }
        word.reverse();
        word
    }

    fn sigma(&self, m: Move) -> Vec<u32> {
        self.edges.iter().map(|e| e[m.index()]).collect()
    }
}

fn lookup(classes: &[EpiClass], e: &EpiClass) -> usize {
    classes
        .binary_search(e)
        .expect("move image escaped the enumerated class list")
}

/// Decomposes the full class list into orbit components.
///
/// Points are explored breadth-first in the fixed move order U, V, U⁻¹,
/// V⁻¹, so Schreier trees (hence stabilizer generators) are deterministic.
/// Move images within one frontier layer are computed in parallel and
/// integrated sequentially, which keeps the result schedule-independent.
pub fn decompose_components(ctx: &EpiContext, classes: &[EpiClass]) -> Vec<OrbitComponent> {
    let n = classes.len();
    let mut visited = vec![false; n];
    // global edge cache; each computed edge also fills its partner
    let mut edge_cache: HashMap<(usize, usize), usize> = HashMap::new();
    let mut components = Vec::new();
    for seed in 0..n {
        if visited[seed] {
            continue;
        }
        visited[seed] = true;
        let mut order = vec![seed];
        let mut tree_global: HashMap<usize, (usize, Move)> = HashMap::new();
        let mut layer = vec![seed];
        while !layer.is_empty() {
            // compute unknown edges of this layer in parallel
            let tasks: Vec<(usize, Move)> = layer
                .iter()
                .flat_map(|&p| MOVES.iter().map(move |&m| (p, m)))
                .filter(|&(p, m)| !edge_cache.contains_key(&(p, m.index())))
                .collect();
            let results: Vec<usize> = tasks
                .par_iter()
                .map(|&(p, m)| lookup(classes, &apply_move(ctx, &classes[p], m)))
                .collect();
            for (&(p, m), &q) in tasks.iter().zip(&results) {
                edge_cache.insert((p, m.index()), q);
                edge_cache.insert((q, m.inverse().index()), p);
            }
            let mut next = Vec::new();
            for &p in &layer {
                for &m in &MOVES {
                    let q = edge_cache[&(p, m.index())];
                    if !visited[q] {
                        visited[q] = true;
                        tree_global.insert(q, (p, m));
                        order.push(q);
                        next.push(q);
                    }
                }
            }
            layer = next;
        }
        // points ascending; the seed is minimal, hence local index 0
        let mut points = order;
        points.sort_unstable();
        debug_assert_eq!(points[0], seed);
        let local: HashMap<usize, u32> = points
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u32))
            .collect();
        let edges: Vec<[u32; 4]> = points
            .iter()
            .map(|&g| {
                let mut row = [0u32; 4];
                for &m in &MOVES {
                    row[m.index()] = local[&edge_cache[&(g, m.index())]];
                }
                row
            })
            .collect();
        let tree: Vec<Option<TreeEdge>> = points
            .iter()
            .map(|&g| {
                tree_global.get(&g).map(|&(parent, mv)| TreeEdge {
                    parent: local[&parent],
                    mv,
                })
            })
            .collect();
        components.push(OrbitComponent {
            points,
            edges,
            tree,
        });
    }
    // deterministic order: (size, minimal point); classes are sorted by
    // digest, so the minimal point also carries the minimal hash
    components.sort_by_key(|c| (c.points.len(), c.points[0]));
    components
}

/// Signature of the uniformizing subgroup of a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSignature {
    /// Orbit size = index of the stabilizer in SL₂(ℤ).
    pub d: u64,
    /// Whether -I (realized as V²) acts trivially on the component.
    pub minus_i: bool,
    /// Size of the ± space: d if -I is present, d/2 otherwise.
    pub d_bar: u64,
    /// Elliptic points of order 2: fixed points of S on the ± space.
    pub c2: u64,
    /// Elliptic points of order 3: fixed points of T⁻¹S on the ± space.
    pub c3: u64,
    /// Cycle lengths of T on the ± space, ascending.
    pub cusp_widths: Vec<u64>,
    pub genus: u64,
    /// Wohlfahrt level: lcm of the cusp widths.
    pub level: u64,
}

/// The ± coset space of a component: pairing of points under V², plus the
/// induced permutations used for both the signature and the monodromy.
pub struct PlusMinusSpace {
    pub minus_i: bool,
    /// Local point -> ± class index.
    pub class_of: Vec<u32>,
    pub size: usize,
    pub sigma_t: Vec<u32>,
    pub sigma_s: Vec<u32>,
    pub sigma_j0: Vec<u32>,
}

fn induced(map: &[u32], class_of: &[u32], size: usize) -> Vec<u32> {
    let mut out = vec![u32::MAX; size];
    for (p, &q) in map.iter().enumerate() {
        let cp = class_of[p] as usize;
        let cq = class_of[q as usize];
        debug_assert!(out[cp] == u32::MAX || out[cp] == cq);
        out[cp] = cq;
    }
    out
}

pub fn plus_minus_space(comp: &OrbitComponent) -> Result<PlusMinusSpace> {
    let n = comp.size();
    let sigma_u = comp.sigma(Move::U);
    let sigma_v = comp.sigma(Move::V);
    let sigma_u_inv = comp.sigma(Move::UInv);
    let pi_minus: Vec<u32> = (0..n).map(|p| sigma_v[sigma_v[p] as usize]).collect();
    let minus_i = pi_minus.iter().enumerate().all(|(p, &q)| p as u32 == q);
    let mut class_of = vec![u32::MAX; n];
    let mut size = 0usize;
    for p in 0..n {
        if class_of[p] == u32::MAX {
            class_of[p] = size as u32;
            class_of[pi_minus[p] as usize] = size as u32;
            size += 1;
        }
    }
    if !minus_i && 2 * size != n {
        return Err(Error::InternalConsistency(
            "V² acts without fixed points or trivially on an orbit".into(),
        ));
    }
    let sigma_t = induced(&sigma_u, &class_of, size);
    let sigma_s = induced(&sigma_v, &class_of, size);
    // word U⁻¹ then V realizes T⁻¹S on the ± space
    let j0_raw: Vec<u32> = (0..n)
        .map(|p| sigma_v[sigma_u_inv[p] as usize])
        .collect();
    let sigma_j0 = induced(&j0_raw, &class_of, size);
    for c in 0..size {
        if sigma_s[sigma_s[c] as usize] != c as u32 {
            return Err(Error::InternalConsistency(
                "S does not square to the identity on the ± space".into(),
            ));
        }
        let c3 = sigma_j0[sigma_j0[sigma_j0[c] as usize] as usize] as usize;
        if c3 != c {
            return Err(Error::InternalConsistency(
                "T⁻¹S does not cube to the identity on the ± space".into(),
            ));
        }
    }
    Ok(PlusMinusSpace {
        minus_i,
        class_of,
        size,
        sigma_t,
        sigma_s,
        sigma_j0,
    })
}

fn cycle_lengths(map: &[u32]) -> Vec<u64> {
    let mut seen = vec![false; map.len()];
    let mut lengths = Vec::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start as u32;
        while !seen[p as usize] {
            seen[p as usize] = true;
            p = map[p as usize];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// Computes the signature of a component. A non-integer genus can only
/// arise from a convention bug and aborts loudly.
pub fn signature(comp: &OrbitComponent) -> Result<ComponentSignature> {
    let pm = plus_minus_space(comp)?;
    signature_from_pm(comp, &pm)
}

pub fn signature_from_pm(
    comp: &OrbitComponent,
    pm: &PlusMinusSpace,
) -> Result<ComponentSignature> {
    let d = comp.size() as u64;
    let d_bar = pm.size as u64;
    let c2 = pm
        .sigma_s
        .iter()
        .enumerate()
        .filter(|&(i, &q)| i as u32 == q)
        .count() as u64;
    let c3 = pm
        .sigma_j0
        .iter()
        .enumerate()
        .filter(|&(i, &q)| i as u32 == q)
        .count() as u64;
    let cusp_widths = cycle_lengths(&pm.sigma_t);
    let cusps = cusp_widths.len() as u64;
    let twelve_genus = 12i64 + d_bar as i64 - 3 * c2 as i64 - 4 * c3 as i64 - 6 * cusps as i64;
    if twelve_genus < 0 || twelve_genus % 12 != 0 {
        return Err(Error::InternalConsistency(format!(
            "non-integer genus from (d̄={d_bar}, c2={c2}, c3={c3}, cusps={cusps})"
        )));
    }
    let level = cusp_widths
        .iter()
        .fold(1u64, |acc, &w| num_integer::lcm(acc, w));
    Ok(ComponentSignature {
        d,
        minus_i: pm.minus_i,
        d_bar,
        c2,
        c3,
        cusp_widths,
        genus: (twelve_genus / 12) as u64,
        level,
    })
}

/// A Schreier generator of the stabilizer of the base point: a move word
/// fixing the base point, with its abelianized matrix.
#[derive(Clone, Debug)]
pub struct StabilizerGen {
    pub word: Vec<Move>,
    pub matrix: Mat2,
}

/// Schreier generators of the stabilizer of the base point, from the
/// non-tree {U, V}-edges. Identity matrices are dropped and duplicates
/// deduplicated; the set generates the stabilizer, of index `d`.
pub fn stabilizer_matrices(comp: &OrbitComponent) -> Vec<StabilizerGen> {
    let n = comp.size();
    let mut gens: Vec<StabilizerGen> = Vec::new();
    let mut seen: Vec<Mat2> = Vec::new();
    for p in 0..n as u32 {
        let word_p = comp.word_to(p);
        for m in [Move::U, Move::V] {
            let q = comp.edges[p as usize][m.index()];
            if let Some(edge) = comp.tree[q as usize] {
                if edge.parent == p && edge.mv.index() == m.index() {
                    continue; // tree edge
                }
            }
            let mut word = word_p.clone();
            word.push(m);
            let word_q = comp.word_to(q);
            word.extend(word_q.iter().rev().map(|w| w.inverse()));
            let matrix = word_matrix(&word);
            debug_assert!(matrix.det().is_one());
            if matrix.is_identity() || seen.contains(&matrix) {
                continue;
            }
            seen.push(matrix.clone());
            gens.push(StabilizerGen { word, matrix });
        }
    }
    gens
}

/// Replays a move word from a starting point of a component.
pub fn replay_word(comp: &OrbitComponent, start: u32, word: &[Move]) -> u32 {
    word.iter()
        .fold(start, |p, m| comp.edges[p as usize][m.index()])
}

/// Monodromy of a component: the group generated by T and S on its ±
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyInfo {
    pub domain_size: u64,
    pub classification: AltSym,
    /// Decimal digit count of the monodromy group order.
    pub order_digits: usize,
}

pub fn monodromy_summary(pm: &PlusMinusSpace) -> Result<MonodromyInfo> {
    monodromy_of_maps(pm.size, &pm.sigma_t, &pm.sigma_s)
}

fn monodromy_of_maps(size: usize, sigma_t: &[u32], sigma_s: &[u32]) -> Result<MonodromyInfo> {
    let t = Perm::from_images(sigma_t.iter().map(|&v| v as Point).collect())
        .expect("induced map is a permutation");
    let s = Perm::from_images(sigma_s.iter().map(|&v| v as Point).collect())
        .expect("induced map is a permutation");
    debug_assert_eq!(point_orbit(&[t.clone(), s.clone()], 0).len(), size);
    let (classification, order) = classify_generated(size, &[t, s])?;
    Ok(MonodromyInfo {
        domain_size: size as u64,
        classification,
        order_digits: order.to_string().len(),
    })
}

/// Grouping of components under the automorphism action.
pub struct AbsComponent {
    /// Indices into the component list, ascending. `m` = member count.
    pub members: Vec<usize>,
    /// Fiber size of the folded component: number of automorphism orbits
    /// on the classes of the member components.
    pub abs_degree: u64,
    /// Monodromy of the folded component on its ± space.
    pub monodromy: MonodromyInfo,
}

pub enum AbsGrouping {
    /// Orbits of the supplied automorphism action on components.
    Exact(Vec<AbsComponent>),
    /// No automorphism generators: components grouped by (signature,
    /// Higman order) only. An upper-bound heuristic, flagged as such.
    Heuristic(Vec<Vec<usize>>),
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut p = x;
        while self.parent[p as usize] != root {
            let next = self.parent[p as usize];
            self.parent[p as usize] = root;
            p = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // root at the smaller index keeps representatives canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Groups components into orbits of the automorphism action and computes
/// the folded data. `aut_gens` must normalize the group (checked by the
/// caller via `standard::check_normalizing`).
pub fn abs_components(
    ctx: &EpiContext,
    classes: &[EpiClass],
    comps: &[OrbitComponent],
    aut_gens: &[Perm],
) -> Result<AbsGrouping> {
    let n = classes.len();
    if aut_gens.is_empty() {
        // identity partition; still exact (no outer action supplied)
        let groups = (0..comps.len())
            .map(|ci| fold_group(comps, &[ci], &[]))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AbsGrouping::Exact(groups));
    }
    // class-level automorphism maps, one per generator
    let aut_maps: Vec<Vec<u32>> = aut_gens
        .iter()
        .map(|a| {
            (0..n)
                .into_par_iter()
                .map(|i| lookup(classes, &ctx.apply_aut(&classes[i], a)) as u32)
                .collect()
        })
        .collect();
    let mut comp_of = vec![0u32; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &g in &comp.points {
            comp_of[g] = ci as u32;
        }
    }
    let mut uf = UnionFind::new(comps.len());
    for map in &aut_maps {
        for (ci, comp) in comps.iter().enumerate() {
            let image = comp_of[map[comp.points[0]] as usize];
            uf.union(ci as u32, image);
        }
    }
    let mut groups: HashMap<u32, Vec<usize>> = HashMap::new();
    for ci in 0..comps.len() {
        groups.entry(uf.find(ci as u32)).or_default().push(ci);
    }
    let mut roots: Vec<u32> = groups.keys().copied().collect();
    roots.sort_unstable();
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let mut members = groups.remove(&r).unwrap();
        members.sort_unstable();
        out.push(fold_group(comps, &members, &aut_maps)?);
    }
    Ok(AbsGrouping::Exact(out))
}

/// Folds one orbit of components: counts automorphism orbits on classes
/// (the abs degree) and computes the monodromy on the folded ± space.
fn fold_group(
    comps: &[OrbitComponent],
    members: &[usize],
    aut_maps: &[Vec<u32>],
) -> Result<AbsComponent> {
    let mut member_points: Vec<usize> = members
        .iter()
        .flat_map(|&ci| comps[ci].points.iter().copied())
        .collect();
    member_points.sort_unstable();
    let local: HashMap<usize, u32> = member_points
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u32))
        .collect();
    let k = member_points.len();
    // abs degree: orbits of the automorphism action alone
    let mut uf_nodes = UnionFind::new(k);
    for map in aut_maps {
        for (i, &g) in member_points.iter().enumerate() {
            uf_nodes.union(i as u32, local[&(map[g] as usize)]);
        }
    }
    let mut distinct: Vec<u32> = (0..k as u32).map(|i| uf_nodes.find(i)).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let abs_degree = distinct.len() as u64;
    // folded ± space: additionally identify V²-partners
    let mut uf_pm = UnionFind::new(k);
    for map in aut_maps {
        for (i, &g) in member_points.iter().enumerate() {
            uf_pm.union(i as u32, local[&(map[g] as usize)]);
        }
    }
    let mut sigma_u = vec![0u32; k];
    let mut sigma_v = vec![0u32; k];
    for &ci in members {
        let comp = &comps[ci];
        for (lp, &g) in comp.points.iter().enumerate() {
            let gu = comp.points[comp.edges[lp][Move::U.index()] as usize];
            let gv = comp.points[comp.edges[lp][Move::V.index()] as usize];
            sigma_u[local[&g] as usize] = local[&gu];
            sigma_v[local[&g] as usize] = local[&gv];
        }
    }
    for i in 0..k as u32 {
        let vv = sigma_v[sigma_v[i as usize] as usize];
        uf_pm.union(i, vv);
    }
    let mut fold_id = vec![u32::MAX; k];
    let mut fold_size = 0u32;
    for i in 0..k as u32 {
        let root = uf_pm.find(i);
        if fold_id[root as usize] == u32::MAX {
            fold_id[root as usize] = fold_size;
            fold_size += 1;
        }
        fold_id[i as usize] = fold_id[root as usize];
    }
    let folded_t = induced(&sigma_u, &fold_id, fold_size as usize);
    let folded_s = induced(&sigma_v, &fold_id, fold_size as usize);
    let monodromy = monodromy_of_maps(fold_size as usize, &folded_t, &folded_s)?;
    Ok(AbsComponent {
        members: members.to_vec(),
        abs_degree,
        monodromy,
    })
}

/// Heuristic grouping when no automorphism generators are available:
/// identical signature and Higman order.
pub fn heuristic_grouping(
    signatures: &[ComponentSignature],
    higman_orders: &[u64],
) -> Vec<Vec<usize>> {
    let mut buckets: HashMap<(Vec<u64>, u64, u64, u64, bool, u64), Vec<usize>> = HashMap::new();
    for i in 0..signatures.len() {
        let s = &signatures[i];
        buckets
            .entry((
                s.cusp_widths.clone(),
                s.d,
                s.c2,
                s.c3,
                s.minus_i,
                higman_orders[i],
            ))
            .or_default()
            .push(i);
    }
    let mut groups: Vec<Vec<usize>> = buckets.into_values().collect();
    groups.sort_by_key(|g| g[0]);
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUM_CAP;
    use crate::standard;
    use std::sync::Arc;

    fn ctx_for(group: crate::group::PermGroup) -> EpiContext {
        EpiContext::new(Arc::new(group), DEFAULT_ENUM_CAP).unwrap()
    }

    #[test]
    fn move_algebra_is_valid() {
        validate_move_algebra();
    }

    #[test]
    fn moves_invert_on_classes() {
        let ctx = ctx_for(standard::symmetric(4).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        for e in &classes {
            for m in [Move::U, Move::V] {
                let back = apply_move(&ctx, &apply_move(&ctx, e, m), m.inverse());
                assert_eq!(&back, e);
            }
        }
    }

    #[test]
    fn u_squares_generator_when_x_equals_y() {
        // on a pair with x = y, U gives (x, x²): raw check
        let x = Perm::parse("(1 2 3 4 5)", 5).unwrap();
        let (nx, ny) = Move::U.apply_raw(&x, &x);
        assert_eq!(nx, x);
        assert_eq!(ny, x.compose(&x));
    }

    #[test]
    fn v_move_on_s3_class() {
        // class of ((1 2), (1 2 3)) goes to class of ((1 2 3), (1 2))
        let ctx = ctx_for(standard::symmetric(3).unwrap());
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(1 2 3)", 3).unwrap();
        let e = ctx.canonical_form(&a, &b).unwrap();
        let img = apply_move(&ctx, &e, Move::V);
        let expect = ctx.canonical_form(&b, &a).unwrap();
        assert_eq!(img, expect);
    }

    #[test]
    fn d10_has_two_components_of_size_3() {
        let ctx = ctx_for(standard::dihedral(10).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.size() == 3));
    }

    #[test]
    fn d6_signature_matches() {
        let ctx = ctx_for(standard::dihedral(6).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        assert_eq!(comps.len(), 1);
        let sig = signature(&comps[0]).unwrap();
        assert_eq!(
            sig,
            ComponentSignature {
                d: 3,
                minus_i: true,
                d_bar: 3,
                c2: 1,
                c3: 0,
                cusp_widths: vec![1, 2],
                genus: 0,
                level: 2,
            }
        );
    }

    #[test]
    fn d8_signature_matches() {
        let ctx = ctx_for(standard::dihedral(8).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        assert_eq!(comps.len(), 1);
        let sig = signature(&comps[0]).unwrap();
        assert_eq!(sig.d, 6);
        assert_eq!(sig.c2, 0);
        assert_eq!(sig.c3, 0);
        assert!(sig.minus_i);
        assert_eq!(sig.cusp_widths, vec![2, 2, 2]);
        assert_eq!(sig.genus, 0);
        assert_eq!(sig.level, 2);
    }

    #[test]
    fn trivial_group_gives_size_one_component() {
        let ctx = ctx_for(crate::group::PermGroup::trivial(1));
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        assert_eq!(comps.len(), 1);
        let sig = signature(&comps[0]).unwrap();
        assert_eq!(
            (sig.d, sig.c2, sig.c3, sig.minus_i, sig.genus, sig.level),
            (1, 1, 1, true, 0, 1)
        );
        assert_eq!(sig.cusp_widths, vec![1]);
        // stabilizer of a fixed class is everything: {M_U, M_V}
        let gens = stabilizer_matrices(&comps[0]);
        let mats: Vec<Mat2> = gens.iter().map(|g| g.matrix.clone()).collect();
        assert!(mats.contains(&Move::U.matrix()));
        assert!(mats.contains(&Move::V.matrix()));
        let mono = monodromy_summary(&plus_minus_space(&comps[0]).unwrap()).unwrap();
        assert_eq!(mono.classification, AltSym::Other);
        assert_eq!(mono.order_digits, 1);
    }

    #[test]
    fn stabilizer_words_fix_base_point() {
        let ctx = ctx_for(standard::symmetric(4).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        for comp in &comps {
            for gen in stabilizer_matrices(comp) {
                assert_eq!(replay_word(comp, 0, &gen.word), 0);
            }
        }
    }

    #[test]
    fn sigma_v_squared_is_inversion() {
        let ctx = ctx_for(standard::symmetric(4).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        for e in &classes {
            let twice = apply_move(&ctx, &apply_move(&ctx, e, Move::V), Move::V);
            assert_eq!(twice, apply_inversion(&ctx, e));
        }
    }

    #[test]
    fn d10_abs_folds_to_m2() {
        let ctx = ctx_for(standard::dihedral(10).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        let auts = match standard::natural_auts_dihedral(10).unwrap() {
            standard::NaturalAuts::Perms(a) => a,
            _ => unreachable!(),
        };
        standard::check_normalizing(ctx.group(), &auts).unwrap();
        match abs_components(&ctx, &classes, &comps, &auts).unwrap() {
            AbsGrouping::Exact(groups) => {
                assert_eq!(groups.len(), 1);
                assert_eq!(groups[0].members.len(), 2);
                assert_eq!(groups[0].abs_degree, 3);
                assert_eq!(groups[0].monodromy.classification, AltSym::Sym);
                assert_eq!(groups[0].monodromy.domain_size, 3);
            }
            _ => panic!("expected exact grouping"),
        }
    }

    #[test]
    fn inner_auts_give_identity_partition() {
        let ctx = ctx_for(standard::symmetric(4).unwrap());
        let classes = ctx.enumerate(1 << 20).unwrap();
        let comps = decompose_components(&ctx, &classes);
        let inner = vec![Perm::parse("(1 2)", 4).unwrap()];
        match abs_components(&ctx, &classes, &comps, &inner).unwrap() {
            AbsGrouping::Exact(groups) => {
                assert_eq!(groups.len(), comps.len());
                assert!(groups.iter().all(|g| g.members.len() == 1));
            }
            _ => panic!("expected exact grouping"),
        }
    }
}
