//! Permutation groups with a base and strong generating set.
//!
//! The stabilizer chain is built by a deterministic incremental
//! Schreier–Sims: generators are sifted and filed at the first base point
//! they move, orbits are maintained per level with Schreier vectors, and
//! closure is verified bottom-up by sifting Schreier generators.
//! Randomized variants are deliberately not used; identical input yields an
//! identical chain, so everything downstream is reproducible bit for bit.

use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{Perm, Point};

const UNSEEN: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

struct Level {
    point: Point,
    /// Indices into the generator pool of the strong generators fixing all
    /// earlier base points.
    gens: Vec<usize>,
    /// Orbit of `point` under those generators, in BFS order.
    orbit: Vec<Point>,
    /// Schreier vector: for each domain point, the pool index of the
    /// generator whose edge reached it (ROOT at the base point).
    sv: Vec<u32>,
}

struct Chain {
    degree: usize,
    pool: Vec<(Perm, Perm)>, // (generator, inverse)
    base: Vec<Point>,
    levels: Vec<Level>,
}

enum LevelCheck {
    Clean,
    Residue(Perm),
}

impl Chain {
    fn new(degree: usize) -> Chain {
        Chain {
            degree,
            pool: Vec::new(),
            base: Vec::new(),
            levels: Vec::new(),
        }
    }

    fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for level in &self.levels {
            ord *= BigUint::from(level.orbit.len());
        }
        ord
    }

    fn recompute_orbit(&mut self, k: usize) {
        let point = self.levels[k].point;
        let mut sv = vec![UNSEEN; self.degree];
        let mut orbit = vec![point];
        sv[point as usize] = ROOT;
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for &gi in &self.levels[k].gens {
                let q = self.pool[gi].0.image(pt);
                if sv[q as usize] == UNSEEN {
                    sv[q as usize] = gi as u32;
                    orbit.push(q);
                }
            }
        }
        self.levels[k].orbit = orbit;
        self.levels[k].sv = sv;
    }

    /// Transversal representative mapping the level's base point to `pt`.
    fn rep(&self, k: usize, pt: Point) -> Perm {
        let level = &self.levels[k];
        let mut word = Vec::new();
        let mut p = pt;
        while level.sv[p as usize] != ROOT {
            let gi = level.sv[p as usize] as usize;
            word.push(gi);
            p = self.pool[gi].1.image(p);
        }
        let mut rep = Perm::identity(self.degree);
        for &gi in word.iter().rev() {
            rep = self.pool[gi].0.compose(&rep);
        }
        rep
    }

    /// Replaces `r` by `u^{-1} * r` where `u` is the representative reaching
    /// `pt` at level `k`.
    fn strip(&self, k: usize, mut r: Perm, pt: Point) -> Perm {
        let level = &self.levels[k];
        let mut p = pt;
        while level.sv[p as usize] != ROOT {
            let gi = level.sv[p as usize] as usize;
            r = self.pool[gi].1.compose(&r);
            p = self.pool[gi].1.image(p);
        }
        r
    }

    /// Sifts `g` through levels `start..`; the residue is the identity
    /// exactly when the chain certifies membership.
    fn sift_from(&self, start: usize, g: Perm) -> Perm {
        let mut r = g;
        for k in start..self.levels.len() {
            let b = self.levels[k].point;
            let pt = r.image(b);
            if pt == b {
                continue;
            }
            if self.levels[k].sv[pt as usize] == UNSEEN {
                return r;
            }
            r = self.strip(k, r, pt);
        }
        r
    }

    fn sifts_to_identity(&self, g: &Perm) -> bool {
        self.sift_from(0, g.clone()).is_identity()
    }

    /// Files a residue at the first base point it moves, extending the base
    /// when it fixes every current base point.
    fn raw_add(&mut self, g: Perm) {
        debug_assert!(!g.is_identity());
        let inv = g.inverse();
        let k = match self.base.iter().position(|&b| g.image(b) != b) {
            Some(k) => k,
            None => {
                let b = g.min_moved_point().expect("nontrivial residue");
                self.base.push(b);
                self.levels.push(Level {
                    point: b,
                    gens: Vec::new(),
                    orbit: Vec::new(),
                    sv: Vec::new(),
                });
                self.levels.len() - 1
            }
        };
        let gi = self.pool.len();
        self.pool.push((g, inv));
        for j in 0..=k {
            self.levels[j].gens.push(gi);
        }
        for j in 0..=k {
            self.recompute_orbit(j);
        }
    }

    /// Scans the Schreier generators of level `k` against the current
    /// chain, filing every surviving residue immediately. The orbit and
    /// generator lists may grow while scanning; the dynamic loop bounds
    /// pick the growth up within the same pass. Returns whether anything
    /// was added, or None when the order bound fired.
    fn grow_level(&mut self, k: usize, stop_at: Option<&BigUint>) -> Option<bool> {
        let mut added = false;
        let mut oi = 0;
        while oi < self.levels[k].orbit.len() {
            let pt = self.levels[k].orbit[oi];
            let t = self.rep(k, pt);
            let mut gix = 0;
            while gix < self.levels[k].gens.len() {
                let gi = self.levels[k].gens[gix];
                gix += 1;
                let prod = self.pool[gi].0.compose(&t);
                // strip at level k lands on the Schreier generator itself
                let q = prod.image(self.levels[k].point);
                let s = self.strip(k, prod, q);
                if s.is_identity() {
                    continue;
                }
                let r = self.sift_from(k + 1, s);
                if !r.is_identity() {
                    self.raw_add(r);
                    added = true;
                    if let Some(bound) = stop_at {
                        if self.order() >= *bound {
                            return None;
                        }
                    }
                }
            }
            oi += 1;
        }
        Some(added)
    }

    /// Schreier verification: full bottom-up passes until one pass is
    /// clean. A clean pass checks every Schreier generator against the
    /// final chain, which is exactly the Schreier–Sims completeness
    /// criterion. Returns false when the optional order bound stopped the
    /// build early (chain left incomplete but with order() a valid lower
    /// bound).
    fn verify(&mut self, stop_at: Option<&BigUint>) -> bool {
        if let Some(bound) = stop_at {
            if self.order() >= *bound {
                return false;
            }
        }
        loop {
            let mut dirty = false;
            let mut k = self.levels.len() as isize - 1;
            while k >= 0 {
                match self.grow_level(k as usize, stop_at) {
                    None => return false,
                    Some(added) => dirty |= added,
                }
                k -= 1;
            }
            if !dirty {
                return true;
            }
        }
    }
}

struct Built {
    chain: Chain,
    complete: bool,
    reduced: Vec<Perm>,
}

fn build_chain(degree: usize, gens: &[Perm], stop_at: Option<&BigUint>) -> Result<Built> {
    let mut chain = Chain::new(degree);
    let mut reduced = Vec::new();
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        if g.is_identity() {
            continue;
        }
        let r = chain.sift_from(0, g.clone());
        if r.is_identity() {
            continue;
        }
        reduced.push(g.clone());
        chain.raw_add(r);
        if let Some(bound) = stop_at {
            if chain.order() >= *bound {
                return Ok(Built {
                    chain,
                    complete: false,
                    reduced,
                });
            }
        }
    }
    let complete = chain.verify(stop_at);
    Ok(Built {
        chain,
        complete,
        reduced,
    })
}

/// True when `<gens>` has order at least `bound`. May avoid full closure
/// verification; the transversal product of a partial chain is already a
/// lower bound on the order.
pub fn group_order_at_least(degree: usize, gens: &[Perm], bound: &BigUint) -> Result<bool> {
    let built = build_chain(degree, gens, Some(bound))?;
    Ok(!built.complete || built.chain.order() >= *bound)
}

/// One conjugacy class of a finite permutation group.
#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Least member in the element ordering.
    pub rep: Perm,
    pub size: u64,
    pub element_order: u64,
    /// Canonical label: element order followed by a letter rank among
    /// classes of the same order ("1A", "7B", ...). Letter assignment is an
    /// artifact convention; only orders and class sizes are comparable to
    /// external tables.
    pub label: String,
}

/// The full conjugacy-class table plus an element → class index.
pub struct ClassTable {
    pub classes: Vec<ConjClass>,
    elem_class: Vec<u32>,
}

/// A finite permutation group with verified base and strong generating set.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    reduced_gens: Vec<Perm>,
    chain: Chain,
    order: BigUint,
    elements: OnceLock<Arc<Vec<Perm>>>,
    classes: OnceLock<Arc<ClassTable>>,
}

/// Default cap on full element enumeration (conjugacy classes, centralizers).
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

impl PermGroup {
    pub fn new(gens: Vec<Perm>) -> Result<PermGroup> {
        if gens.is_empty() {
            return Err(Error::InvalidSpec("empty generator list".into()));
        }
        let degree = gens[0].degree();
        let built = build_chain(degree, &gens, None)?;
        debug_assert!(built.complete);
        let order = built.chain.order();
        Ok(PermGroup {
            degree,
            gens,
            reduced_gens: built.reduced,
            chain: built.chain,
            order,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            reduced_gens: Vec::new(),
            chain: Chain::new(degree),
            order: BigUint::one(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Generators that actually extended the chain; they generate the group
    /// and are usually far fewer than the input set.
    pub fn reduced_generators(&self) -> &[Perm] {
        &self.reduced_gens
    }

    pub fn base(&self) -> &[Point] {
        &self.chain.base
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain.pool.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain.sifts_to_identity(g))
    }

    /// Membership sifting residue: the identity exactly when `g` is a
    /// member. A nontrivial residue fixes every base point it got past.
    pub fn sift(&self, g: &Perm) -> Result<Perm> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.chain.sift_from(0, g.clone()))
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// True iff `<x, y>` is the whole group.
    pub fn is_two_generated_by(&self, x: &Perm, y: &Perm) -> Result<bool> {
        if x.degree() != self.degree || y.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree().max(y.degree())));
        }
        group_order_at_least(self.degree, &[x.clone(), y.clone()], &self.order)
    }

    /// All elements, sorted by image array. Errors above `cap`.
    pub fn elements_capped(&self, cap: u64) -> Result<Arc<Vec<Perm>>> {
        match self.order_u64() {
            Some(n) if n <= cap => {}
            _ => {
                return Err(Error::CapExceeded(format!(
                    "group order {} exceeds element-enumeration cap {}",
                    self.order, cap
                )))
            }
        }
        Ok(Arc::clone(self.elements.get_or_init(|| {
            let mut seen: HashSet<Perm> = HashSet::new();
            let id = Perm::identity(self.degree);
            let mut queue = VecDeque::new();
            seen.insert(id.clone());
            queue.push_back(id);
            while let Some(g) = queue.pop_front() {
                for gen in &self.reduced_gens {
                    let h = gen.compose(&g);
                    if !seen.contains(&h) {
                        seen.insert(h.clone());
                        queue.push_back(h);
                    }
                }
            }
            let mut all: Vec<Perm> = seen.into_iter().collect();
            all.sort_unstable();
            Arc::new(all)
        })))
    }

    pub fn elements(&self) -> Result<Arc<Vec<Perm>>> {
        self.elements_capped(DEFAULT_ENUM_CAP)
    }

    fn element_index(elements: &[Perm], g: &Perm) -> Option<usize> {
        elements.binary_search(g).ok()
    }

    /// Conjugacy classes by orbit refinement over the conjugation action,
    /// seeded from the fixed element ordering.
    pub fn conjugacy_classes(&self) -> Result<Arc<ClassTable>> {
        self.conjugacy_classes_capped(DEFAULT_ENUM_CAP)
    }

    pub fn conjugacy_classes_capped(&self, cap: u64) -> Result<Arc<ClassTable>> {
        let elements = self.elements_capped(cap)?;
        Ok(Arc::clone(self.classes.get_or_init(|| {
            let n = elements.len();
            let mut elem_class = vec![u32::MAX; n];
            // (order, size, rep index) per class, refined below
            let mut raw: Vec<(u64, u64, usize)> = Vec::new();
            for seed in 0..n {
                if elem_class[seed] != u32::MAX {
                    continue;
                }
                let class_id = raw.len() as u32;
                let mut orbit = vec![seed];
                elem_class[seed] = class_id;
                let mut head = 0;
                while head < orbit.len() {
                    let g = elements[orbit[head]].clone();
                    head += 1;
                    for c in &self.reduced_gens {
                        let h = g.conjugated_by(c);
                        let idx = Self::element_index(&elements, &h)
                            .expect("conjugate escaped the element list");
                        if elem_class[idx] == u32::MAX {
                            elem_class[idx] = class_id;
                            orbit.push(idx);
                        }
                    }
                }
                raw.push((elements[seed].order(), orbit.len() as u64, seed));
            }
            // canonical order: (element order, class size, minimal representative)
            let mut order_ids: Vec<usize> = (0..raw.len()).collect();
            order_ids.sort_by(|&a, &b| {
                let ka = (raw[a].0, raw[a].1, &elements[raw[a].2]);
                let kb = (raw[b].0, raw[b].1, &elements[raw[b].2]);
                ka.cmp(&kb)
            });
            let mut remap = vec![0u32; raw.len()];
            for (new_id, &old_id) in order_ids.iter().enumerate() {
                remap[old_id] = new_id as u32;
            }
            for c in elem_class.iter_mut() {
                *c = remap[*c as usize];
            }
            let mut classes = Vec::with_capacity(raw.len());
            let mut letter_rank: std::collections::HashMap<u64, usize> =
                std::collections::HashMap::new();
            for &old_id in &order_ids {
                let (element_order, size, rep_idx) = raw[old_id];
                let rank = letter_rank.entry(element_order).or_insert(0);
                let label = format!("{}{}", element_order, letters(*rank));
                *rank += 1;
                classes.push(ConjClass {
                    rep: elements[rep_idx].clone(),
                    size,
                    element_order,
                    label,
                });
            }
            Arc::new(ClassTable {
                classes,
                elem_class,
            })
        })))
    }

    /// Class index of a member element.
    pub fn class_of(&self, g: &Perm) -> Result<usize> {
        let table = self.conjugacy_classes()?;
        let elements = self.elements()?;
        match Self::element_index(&elements, g) {
            Some(idx) => Ok(table.elem_class[idx] as usize),
            None => Err(Error::NotInGroup),
        }
    }

    /// Centralizer C_G(x) as a group, by filtering the element list.
    pub fn centralizer(&self, x: &Perm) -> Result<PermGroup> {
        if !self.contains(x)? {
            return Err(Error::NotInGroup);
        }
        let members = self.centralizer_elements(x)?;
        PermGroup::from_member_list(self.degree, &members)
    }

    /// Sorted member list of C_G(x).
    pub fn centralizer_elements(&self, x: &Perm) -> Result<Vec<Perm>> {
        let elements = self.elements()?;
        Ok(elements
            .iter()
            .filter(|g| g.commutes_with(x))
            .cloned()
            .collect())
    }

    /// Builds a group from a (closed) member list, skipping redundant entries.
    pub fn from_member_list(degree: usize, members: &[Perm]) -> Result<PermGroup> {
        let mut chain = Chain::new(degree);
        let mut reduced = Vec::new();
        for g in members {
            if g.is_identity() || chain.sifts_to_identity(g) {
                continue;
            }
            reduced.push(g.clone());
            chain.raw_add(g.clone());
            chain.verify(None);
        }
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens: reduced.clone(),
            reduced_gens: reduced,
            chain,
            order,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }
}

fn letters(mut rank: usize) -> String {
    // A, B, ..., Z, AA, AB, ... (bijective base 26)
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (rank % 26) as u8);
        rank /= 26;
        if rank == 0 {
            break;
        }
        rank -= 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Classification of a permutation group against the full alternating and
/// symmetric groups on its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltSym {
    Alt,
    Sym,
    Other,
}

impl std::fmt::Display for AltSym {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AltSym::Alt => write!(f, "Alt"),
            AltSym::Sym => write!(f, "Sym"),
            AltSym::Other => write!(f, "Other"),
        }
    }
}

pub fn factorial(m: usize) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=m {
        f *= BigUint::from(k);
    }
    f
}

/// Alt/Sym identification by arbitrary-precision order comparison against
/// m!/2 and m!.
pub fn identify_alt_sym(group: &PermGroup) -> AltSym {
    let m = group.degree();
    if m < 2 {
        return AltSym::Other;
    }
    let full = factorial(m);
    if *group.order() == full {
        return AltSym::Sym;
    }
    if m >= 3 && *group.order() == &full / 2u32 {
        return AltSym::Alt;
    }
    AltSym::Other
}

/// True when the group generated by `gens` is transitive and primitive on
/// the full domain. Atkinson's test: for every β, the finest block system
/// merging {0, β} must be the trivial one.
pub fn is_primitive(degree: usize, gens: &[Perm]) -> bool {
    if degree < 2 || point_orbit(gens, 0).len() != degree {
        return false;
    }
    for beta in 1..degree as Point {
        let mut parent: Vec<Point> = (0..degree as Point).collect();
        fn find(parent: &mut [Point], x: Point) -> Point {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut p = x;
            while parent[p as usize] != root {
                let next = parent[p as usize];
                parent[p as usize] = root;
                p = next;
            }
            root
        }
        let mut queue = vec![(0 as Point, beta)];
        parent[beta as usize] = 0;
        let mut merged = 1usize;
        while let Some((a, b)) = queue.pop() {
            for g in gens {
                let (ga, gb) = (g.image(a), g.image(b));
                let (ra, rb) = (find(&mut parent, ga), find(&mut parent, gb));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi as usize] = lo;
                    merged += 1;
                    queue.push((ga, gb));
                }
            }
        }
        // block size = degree / #blocks; #blocks = degree - merged
        if degree - merged != 1 {
            return false;
        }
    }
    true
}

/// Looks for an element of `<gens>` with exactly one cycle of length
/// divisible by some prime p <= degree - 3, that cycle having length
/// exactly p. Such an element powers to a p-cycle, and by Jordan's theorem
/// a primitive group containing a p-cycle with p <= degree - 3 contains
/// the full alternating group. The search walks a fixed deterministic
/// word stream; failure to find one is inconclusive.
fn has_jordan_witness(degree: usize, gens: &[Perm], attempts: usize) -> bool {
    let m = degree;
    if m < 5 {
        return false;
    }
    let mut small_primes = vec![];
    for p in 2..=(m - 3) {
        if (2..p).all(|d| d * d > p || p % d != 0) && p >= 2 {
            small_primes.push(p as u64);
        }
    }
    let mut acc = gens[0].clone();
    let mut seen = vec![false; m];
    for step in 0..attempts {
        let mut lengths: Vec<u64> = Vec::new();
        seen.iter_mut().for_each(|s| *s = false);
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start as Point;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = acc.image(p);
                len += 1;
            }
            lengths.push(len);
        }
        for &p in &small_primes {
            let divisible = lengths.iter().filter(|&&l| l % p == 0).count();
            if divisible == 1 && lengths.contains(&p) {
                return true;
            }
        }
        acc = acc.compose(&gens[step % gens.len()]);
        if step % 7 == 3 {
            acc = acc.compose(&acc.clone());
        }
    }
    false
}

/// Classification plus exact order for a generated group.
///
/// Fast paths, in order: (1) primitive with a Jordan witness certifies
/// that the group contains Alt(m), so parity decides Alt versus Sym and
/// the order is exact; (2) a partial chain's transversal product is a
/// lower bound on the order, and the order divides m! (resp. m!/2 when
/// every generator is even), so exceeding half the target pins the order
/// without full closure verification. Inconclusive cases fall back to the
/// fully verified chain.
pub fn classify_generated(degree: usize, gens: &[Perm]) -> Result<(AltSym, BigUint)> {
    let m = degree;
    let nontrivial: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if nontrivial.is_empty() {
        return Ok((AltSym::Other, BigUint::one()));
    }
    if m >= 5 {
        let primitive = is_primitive(degree, &nontrivial);
        if primitive && has_jordan_witness(degree, &nontrivial, 512) {
            let full = factorial(m);
            return Ok(if nontrivial.iter().all(|g| g.is_even()) {
                (AltSym::Alt, full / 2u32)
            } else {
                (AltSym::Sym, full)
            });
        }
        if !primitive {
            // alternating and symmetric groups are primitive; only the
            // exact order is still needed
            let group = PermGroup::new(nontrivial)?;
            return Ok((AltSym::Other, group.order().clone()));
        }
    }
    if m >= 3 {
        let full = factorial(m);
        let all_even = nontrivial.iter().all(|g| g.is_even());
        if all_even {
            let bound = &full / 4u32 + BigUint::one();
            if group_order_at_least(degree, &nontrivial, &bound)? {
                return Ok((AltSym::Alt, full / 2u32));
            }
        } else {
            let bound = &full / 2u32 + BigUint::one();
            if group_order_at_least(degree, &nontrivial, &bound)? {
                return Ok((AltSym::Sym, full));
            }
        }
    }
    let group = PermGroup::new(nontrivial)?;
    let class = identify_alt_sym(&group);
    Ok((class, group.order().clone()))
}

/// Orbit of a point under a generator list, in BFS order.
pub fn point_orbit(gens: &[Perm], start: Point) -> Vec<Point> {
    if gens.is_empty() {
        return vec![start];
    }
    let degree = gens[0].degree();
    let mut seen = vec![false; degree];
    let mut orbit = vec![start];
    seen[start as usize] = true;
    let mut head = 0;
    while head < orbit.len() {
        let pt = orbit[head];
        head += 1;
        for g in gens {
            let q = g.image(pt);
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(vec![p("(1 2)", 4), p("(1 2 3 4)", 4)]).unwrap()
    }

    #[test]
    fn s4_order_24() {
        assert_eq!(s4().order_u64(), Some(24));
    }

    #[test]
    fn stabilizer_chain_identity() {
        let g = s4();
        let product: u64 = g.transversal_sizes().iter().map(|&s| s as u64).product();
        assert_eq!(product, 24);
    }

    #[test]
    fn membership_even_odd() {
        let a4 = PermGroup::new(vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(a4.contains(&p("(1 2 3)", 4)).unwrap());
        assert!(!a4.contains(&p("(1 2)", 4)).unwrap());
    }

    #[test]
    fn membership_in_cyclic_group() {
        let c5 = PermGroup::new(vec![p("(1 2 3 4 5)", 5)]).unwrap();
        // (1 3 5 2 4) is the square of the 5-cycle
        assert!(c5.contains(&p("(1 3 5 2 4)", 5)).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let g = s4();
        assert!(matches!(
            g.contains(&Perm::identity(5)),
            Err(Error::DegreeMismatch(4, 5))
        ));
    }

    #[test]
    fn s3_class_table() {
        let s3 = PermGroup::new(vec![p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        let table = s3.conjugacy_classes().unwrap();
        let sizes: Vec<u64> = table.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let labels: Vec<&str> = table.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1A", "2A", "3A"]);
    }

    #[test]
    fn class_equation_holds() {
        let g = s4();
        let table = g.conjugacy_classes().unwrap();
        let total: u64 = table.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 24);
        for c in &table.classes {
            assert_eq!(24 % c.size, 0);
        }
    }

    #[test]
    fn centralizer_of_3_cycle_in_s3() {
        let s3 = PermGroup::new(vec![p("(1 2)", 3), p("(1 2 3)", 3)]).unwrap();
        let c = s3.centralizer(&p("(1 2 3)", 3)).unwrap();
        assert_eq!(c.order_u64(), Some(3));
        let class_size = s3.conjugacy_classes().unwrap().classes
            [s3.class_of(&p("(1 2 3)", 3)).unwrap()]
        .size;
        assert_eq!(class_size * 3, 6);
    }

    #[test]
    fn centralizer_of_identity_is_g() {
        let g = s4();
        let c = g.centralizer(&Perm::identity(4)).unwrap();
        assert_eq!(c.order_u64(), Some(24));
    }

    #[test]
    fn centralizer_requires_membership() {
        let a4 = PermGroup::new(vec![p("(1 2 3)", 4), p("(2 3 4)", 4)]).unwrap();
        assert!(matches!(
            a4.centralizer(&p("(1 2)", 4)),
            Err(Error::NotInGroup)
        ));
    }

    #[test]
    fn two_generation() {
        let g = s4();
        assert!(g
            .is_two_generated_by(&p("(1 2)", 4), &p("(1 2 3 4)", 4))
            .unwrap());
        // (1 2), (3 4) generate the Klein four-group
        assert!(!g.is_two_generated_by(&p("(1 2)", 4), &p("(3 4)", 4)).unwrap());
        let a5 = PermGroup::new(vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        assert_eq!(a5.order_u64(), Some(60));
        assert!(a5
            .is_two_generated_by(&p("(1 2)(3 4)", 5), &p("(1 3 5)", 5))
            .unwrap());
    }

    #[test]
    fn alt_sym_identification() {
        let s5 = PermGroup::new(vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        assert_eq!(identify_alt_sym(&s5), AltSym::Sym);
        let a5 = PermGroup::new(vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        assert_eq!(identify_alt_sym(&a5), AltSym::Alt);
        let c5 = PermGroup::new(vec![p("(1 2 3 4 5)", 5)]).unwrap();
        assert_eq!(identify_alt_sym(&c5), AltSym::Other);
    }

    #[test]
    fn classify_generated_matches_full_build() {
        let gens = vec![p("(1 2)", 6), p("(1 2 3 4 5 6)", 6)];
        let (class, order) = classify_generated(6, &gens).unwrap();
        assert_eq!(class, AltSym::Sym);
        assert_eq!(order, BigUint::from(720u32));
        let gens = vec![p("(1 2 3)", 6), p("(2 3 4 5 6)", 6)];
        let (class, order) = classify_generated(6, &gens).unwrap();
        assert_eq!(class, AltSym::Alt);
        assert_eq!(order, BigUint::from(360u32));
        let (class, order) = classify_generated(6, &[p("(1 2)(3 4)", 6)]).unwrap();
        assert_eq!(class, AltSym::Other);
        assert_eq!(order, BigUint::from(2u32));
    }

    #[test]
    fn trivial_group() {
        let t = PermGroup::trivial(3);
        assert!(t.is_trivial());
        assert!(t.contains(&Perm::identity(3)).unwrap());
        assert!(!t.contains(&p("(1 2)", 3)).unwrap());
    }

    #[test]
    fn class_labels_split_same_order() {
        // A5 has two classes of 5-cycles
        let a5 = PermGroup::new(vec![p("(1 2 3)", 5), p("(3 4 5)", 5)]).unwrap();
        let table = a5.conjugacy_classes().unwrap();
        let five: Vec<&str> = table
            .classes
            .iter()
            .filter(|c| c.element_order == 5)
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(five, vec!["5A", "5B"]);
    }
}
