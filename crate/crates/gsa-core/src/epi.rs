//! Generating pairs of a finite group up to simultaneous conjugation.
//!
//! An `EpiClass` is the canonical representative of {(x^g, y^g) : g in G}
//! for a generating pair (x, y): the lexicographically minimal simultaneous
//! conjugate under the fixed element ordering (image arrays compared
//! pointwise). These classes are the fiber points the Nielsen-move action
//! of `mcg` permutes.
//!
//! Enumeration contract: x ranges over conjugacy-class representatives, y
//! over orbit representatives of the C_G(x)-conjugation action on G; pairs
//! that fail to generate are discarded; survivors are canonicalized,
//! deduplicated, and sorted by digest. The output is deterministic under
//! any thread count.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{group_order_at_least, PermGroup};
use crate::perm::{Perm, Point};
use crate::util::hash_u32s;

/// A conjugacy class of generating pairs, held by its canonical pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiClass {
    pub x: Perm,
    pub y: Perm,
    /// Seed-free 64-bit digest of the canonical pair.
    pub key: u64,
}

impl EpiClass {
    fn new(x: Perm, y: Perm) -> EpiClass {
        let key = hash_u32s(&[x.images(), y.images()]);
        EpiClass { x, y, key }
    }
}

impl Ord for EpiClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.key, &self.x, &self.y).cmp(&(other.key, &other.x, &other.y))
    }
}

impl PartialOrd for EpiClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The Higman invariant of a class: the conjugacy class of the commutator
/// [y, x] = y x y^{-1} x^{-1}, and its element order (the ramification
/// index of the covers the component parametrizes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigmanInvariant {
    pub class_index: usize,
    pub label: String,
    pub class_size: u64,
    pub ramification_index: u64,
}

/// Group context for pair canonicalization and enumeration: the full
/// element list in canonical order plus an inverse-index table.
pub struct EpiContext {
    group: Arc<PermGroup>,
    elements: Arc<Vec<Perm>>,
    inverse_index: Vec<u32>,
    transitive: bool,
}

/// Elements-per-chunk threshold above which canonicalization parallelizes.
const PAR_CHUNK: usize = 8192;

impl EpiContext {
    pub fn new(group: Arc<PermGroup>, element_cap: u64) -> Result<EpiContext> {
        let elements = group.elements_capped(element_cap)?;
        let mut inverse_index = vec![0u32; elements.len()];
        for (i, g) in elements.iter().enumerate() {
            let inv = g.inverse();
            let j = elements
                .binary_search(&inv)
                .expect("inverse escaped the element list");
            inverse_index[i] = j as u32;
        }
        let transitive = if group.degree() == 0 || group.generators().is_empty() {
            false
        } else {
            crate::group::point_orbit(group.generators(), 0).len() == group.degree()
        };
        Ok(EpiContext {
            group,
            elements,
            inverse_index,
            transitive,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn elements(&self) -> &Arc<Vec<Perm>> {
        &self.elements
    }

    /// Minimal simultaneous conjugate of (x, y); idempotent.
    pub fn canonical_pair(&self, x: &Perm, y: &Perm) -> (Perm, Perm) {
        let n = self.elements.len();
        if n <= 1 {
            return (x.clone(), y.clone());
        }
        let fold = |range: std::ops::Range<usize>| -> (Perm, Perm) {
            let mut best_x: Option<Perm> = None;
            let mut best_y: Option<Perm> = None;
            for idx in range {
                let g = &self.elements[idx];
                let gi = &self.elements[self.inverse_index[idx] as usize];
                if let Some((bx, by)) = candidate_if_smaller(
                    x,
                    y,
                    g,
                    gi,
                    best_x.as_ref().map(|b| (b, best_y.as_ref().unwrap())),
                ) {
                    best_x = Some(bx);
                    best_y = Some(by);
                }
            }
            (best_x.unwrap(), best_y.unwrap())
        };
        if n >= 2 * PAR_CHUNK {
            let chunks: Vec<std::ops::Range<usize>> = (0..n)
                .step_by(PAR_CHUNK)
                .map(|s| s..(s + PAR_CHUNK).min(n))
                .collect();
            chunks
                .into_par_iter()
                .map(fold)
                .reduce_with(|a, b| if (&b.0, &b.1) < (&a.0, &a.1) { b } else { a })
                .unwrap()
        } else {
            fold(0..n)
        }
    }

    /// Canonical class of a generating pair.
    pub fn canonical_form(&self, x: &Perm, y: &Perm) -> Result<EpiClass> {
        if !self.group.is_two_generated_by(x, y)? {
            return Err(Error::NotGenerating);
        }
        let (cx, cy) = self.canonical_pair(x, y);
        Ok(EpiClass::new(cx, cy))
    }

    /// Class of a pair already known to generate (internal fast path).
    pub(crate) fn class_unchecked(&self, x: &Perm, y: &Perm) -> EpiClass {
        let (cx, cy) = self.canonical_pair(x, y);
        EpiClass::new(cx, cy)
    }

    /// Image of a class under conjugation by a normalizing permutation.
    pub fn apply_aut(&self, e: &EpiClass, a: &Perm) -> EpiClass {
        self.class_unchecked(&e.x.conjugated_by(a), &e.y.conjugated_by(a))
    }

    fn generates(&self, x: &Perm, y: &Perm) -> Result<bool> {
        // a transitive group needs transitive generating pairs; cheap reject
        if self.transitive {
            let orbit = crate::group::point_orbit(&[x.clone(), y.clone()], 0);
            if orbit.len() != self.group.degree() {
                return Ok(false);
            }
        }
        group_order_at_least(
            self.group.degree(),
            &[x.clone(), y.clone()],
            self.group.order(),
        )
    }

    /// Complete, duplicate-free, digest-sorted list of classes of
    /// generating pairs. `pair_budget` caps the number of candidate pairs
    /// tested for generation.
    pub fn enumerate(&self, pair_budget: u64) -> Result<Vec<EpiClass>> {
        if self.group.is_trivial() {
            let id = Perm::identity(self.group.degree());
            return Ok(vec![EpiClass::new(id.clone(), id)]);
        }
        let table = self.group.conjugacy_classes()?;
        let class_count = table.classes.len();
        let per_class: Vec<Result<(u64, Vec<EpiClass>)>> = (0..class_count)
            .into_par_iter()
            .map(|ci| self.enumerate_for_class(&table.classes[ci].rep))
            .collect();
        let mut classes = Vec::new();
        let mut candidates: u64 = 0;
        for item in per_class {
            let (tested, mut found) = item?;
            candidates += tested;
            classes.append(&mut found);
        }
        if candidates > pair_budget {
            return Err(Error::CapExceeded(format!(
                "candidate pair count {candidates} exceeds budget {pair_budget}"
            )));
        }
        classes.sort_unstable();
        classes.dedup();
        Ok(classes)
    }

    /// Work item of the enumeration: one x-class, all C_G(x)-orbit
    /// representatives of y.
    fn enumerate_for_class(&self, x: &Perm) -> Result<(u64, Vec<EpiClass>)> {
        let centralizer = self.group.centralizer_elements(x)?;
        let n = self.elements.len();
        let mut visited = vec![false; n];
        let mut found = Vec::new();
        let mut tested: u64 = 0;
        for yi in 0..n {
            if visited[yi] {
                continue;
            }
            // mark the C_G(x)-conjugation orbit of y; yi is its least member
            let y = &self.elements[yi];
            for c in &centralizer {
                let conj = y.conjugated_by(c);
                let idx = self
                    .elements
                    .binary_search(&conj)
                    .expect("conjugate escaped the element list");
                visited[idx] = true;
            }
            tested += 1;
            if self.generates(x, y)? {
                found.push(self.class_unchecked(x, y));
            }
        }
        Ok((tested, found))
    }

    /// Higman invariant of a class.
    pub fn higman(&self, e: &EpiClass) -> Result<HigmanInvariant> {
        let commutator = e
            .y
            .compose(&e.x)
            .compose(&e.y.inverse())
            .compose(&e.x.inverse());
        if self.group.is_trivial() {
            return Ok(HigmanInvariant {
                class_index: 0,
                label: "1A".into(),
                class_size: 1,
                ramification_index: 1,
            });
        }
        let table = self.group.conjugacy_classes()?;
        let class_index = self.group.class_of(&commutator)?;
        let class = &table.classes[class_index];
        Ok(HigmanInvariant {
            class_index,
            label: class.label.clone(),
            class_size: class.size,
            ramification_index: class.element_order,
        })
    }
}

/// Lazily compares (g x g^{-1}, g y g^{-1}) against the current best and
/// materializes it only when strictly smaller (or when there is no best).
fn candidate_if_smaller(
    x: &Perm,
    y: &Perm,
    g: &Perm,
    gi: &Perm,
    best: Option<(&Perm, &Perm)>,
) -> Option<(Perm, Perm)> {
    let n = x.degree() as Point;
    let materialize = || {
        let cx = Perm::from_images((0..n).map(|i| g.image(x.image(gi.image(i)))).collect())
            .expect("conjugate is a permutation");
        let cy = Perm::from_images((0..n).map(|i| g.image(y.image(gi.image(i)))).collect())
            .expect("conjugate is a permutation");
        (cx, cy)
    };
    let (bx, by) = match best {
        None => return Some(materialize()),
        Some(b) => b,
    };
    for i in 0..n {
        let v = g.image(x.image(gi.image(i)));
        match v.cmp(&bx.image(i)) {
            std::cmp::Ordering::Less => return Some(materialize()),
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Equal => {}
        }
    }
    for i in 0..n {
        let v = g.image(y.image(gi.image(i)));
        match v.cmp(&by.image(i)) {
            std::cmp::Ordering::Less => return Some(materialize()),
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Equal => {}
        }
    }
    None
}

/// A surjection q : G -> H given by generator images, applied via
/// membership sifting in the graph subgroup of G x H.
///
/// The graph {(g, q(g))} is built on the disjoint union of the two domains;
/// q extends to a homomorphism exactly when that subgroup has order |G|,
/// and is surjective exactly when the images generate H. Both are checked
/// at construction.
pub struct QuotientMap {
    graph: PermGroup,
    source_degree: usize,
    target_degree: usize,
}

impl QuotientMap {
    pub fn new(source: &PermGroup, target: &PermGroup, images: &[Perm]) -> Result<QuotientMap> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidSpec(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                images.len()
            )));
        }
        for img in images {
            if !target.contains(img)? {
                return Err(Error::NotInGroup);
            }
        }
        let ng = source.degree();
        let nh = target.degree();
        let product_gens: Vec<Perm> = source
            .generators()
            .iter()
            .zip(images)
            .map(|(g, h)| {
                let mut imgs: Vec<Point> = Vec::with_capacity(ng + nh);
                imgs.extend(g.images().iter().copied());
                imgs.extend(h.images().iter().map(|&p| p + ng as Point));
                Perm::from_images(imgs).expect("disjoint union of permutations")
            })
            .collect();
        let graph = PermGroup::new(product_gens)?;
        if graph.order() != source.order() {
            return Err(Error::NotHomomorphism);
        }
        if !group_order_at_least(nh, images, target.order())? {
            return Err(Error::NotSurjective);
        }
        Ok(QuotientMap {
            graph,
            source_degree: ng,
            target_degree: nh,
        })
    }

    /// q(x) for a member x of the source group.
    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        let ng = self.source_degree;
        let nh = self.target_degree;
        let mut imgs: Vec<Point> = Vec::with_capacity(ng + nh);
        imgs.extend(x.images().iter().copied());
        imgs.extend((0..nh).map(|p| (p + ng) as Point));
        let lifted = Perm::from_images(imgs).expect("disjoint union of permutations");
        let residue = self.graph.sift(&lifted)?;
        // the graph projects bijectively to the source, whose base the
        // chain exhausts, so the residue is trivial on the source side
        for i in 0..ng {
            if residue.image(i as Point) != i as Point {
                return Err(Error::InternalConsistency(
                    "quotient sifting left a source-side residue".into(),
                ));
            }
        }
        let h_inv = Perm::from_images(
            (0..nh)
                .map(|p| residue.image((p + ng) as Point) - ng as Point)
                .collect(),
        )
        .expect("residue restricts to the target domain");
        Ok(h_inv.inverse())
    }

    /// Pushforward of a class along q, canonicalized in the target context.
    pub fn push(&self, e: &EpiClass, target: &EpiContext) -> Result<EpiClass> {
        let qx = self.apply(&e.x)?;
        let qy = self.apply(&e.y)?;
        Ok(target.class_unchecked(&qx, &qy))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUM_CAP;
    use crate::standard;

    fn ctx(group: PermGroup) -> EpiContext {
        EpiContext::new(Arc::new(group), DEFAULT_ENUM_CAP).unwrap()
    }

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn canonical_form_is_conjugation_invariant_and_idempotent() {
        let c = ctx(standard::symmetric(3).unwrap());
        let e1 = c.canonical_form(&p("(1 2)", 3), &p("(1 2 3)", 3)).unwrap();
        // conjugate pair ((1 3), (1 3 2)) = conjugation by (2 3)
        let e2 = c.canonical_form(&p("(1 3)", 3), &p("(1 3 2)", 3)).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.key, e2.key);
        let again = c.canonical_form(&e1.x, &e1.y).unwrap();
        assert_eq!(again, e1);
    }

    #[test]
    fn canonical_form_rejects_non_generating() {
        let c = ctx(standard::symmetric(4).unwrap());
        assert!(matches!(
            c.canonical_form(&p("(1 2)", 4), &p("(3 4)", 4)),
            Err(Error::NotGenerating)
        ));
    }

    #[test]
    fn epi_counts_small_groups() {
        // D6 ≅ S3 has 3 classes of generating pairs
        let c = ctx(standard::dihedral(6).unwrap());
        assert_eq!(c.enumerate(1 << 20).unwrap().len(), 3);
        // (Z/2)^2: 6 generating pairs, trivial inner action
        let c = ctx(standard::zn_zm(2, 2).unwrap());
        assert_eq!(c.enumerate(1 << 20).unwrap().len(), 6);
        // trivial group: one class by convention
        let c = ctx(PermGroup::trivial(1));
        assert_eq!(c.enumerate(1 << 20).unwrap().len(), 1);
    }

    #[test]
    fn a5_has_38_classes() {
        let c = ctx(standard::alternating(5).unwrap());
        assert_eq!(c.enumerate(1 << 20).unwrap().len(), 38);
    }

    #[test]
    fn not_two_generated_gives_empty() {
        // (Z/2)^3 in its regular action
        let text = "(1 2)(3 4)(5 6)(7 8)\n(1 3)(2 4)(5 7)(6 8)\n(1 5)(2 6)(3 7)(4 8)\n";
        let loaded = standard::parse_group_file(text).unwrap();
        let c = ctx(PermGroup::new(loaded.gens).unwrap());
        assert!(c.enumerate(1 << 20).unwrap().is_empty());
    }

    #[test]
    fn higman_for_abelian_is_trivial_class() {
        let c = ctx(standard::zn_zm(2, 2).unwrap());
        let classes = c.enumerate(1 << 20).unwrap();
        for e in &classes {
            let h = c.higman(&e).unwrap();
            assert_eq!(h.ramification_index, 1);
        }
    }

    #[test]
    fn higman_for_d6_has_order_3() {
        let c = ctx(standard::dihedral(6).unwrap());
        for e in c.enumerate(1 << 20).unwrap() {
            let h = c.higman(&e).unwrap();
            assert_eq!(h.ramification_index, 3);
            assert_eq!(h.label, "3A");
        }
    }

    #[test]
    fn inn_orbits_have_size_g_when_center_trivial() {
        // |Epi(F2, G)| counted as ordered pairs equals |classes| * |G| when
        // Z(G) = 1; S3, S4 here, A5 in the slower suites
        for (group, expect) in [
            (standard::symmetric(3).unwrap(), 3u64),
            (standard::symmetric(4).unwrap(), 9u64),
        ] {
            let order = group.order_u64().unwrap();
            let c = ctx(group);
            let classes = c.enumerate(1 << 20).unwrap();
            assert_eq!(classes.len() as u64, expect);
            let mut ordered = 0u64;
            let els = c.elements().clone();
            for x in els.iter() {
                for y in els.iter() {
                    if c.group().is_two_generated_by(x, y).unwrap() {
                        ordered += 1;
                    }
                }
            }
            assert_eq!(ordered, expect * order);
        }
    }

    #[test]
    fn pushforward_identity_and_quotient() {
        let s3 = Arc::new(standard::symmetric(3).unwrap());
        let c = EpiContext::new(Arc::clone(&s3), DEFAULT_ENUM_CAP).unwrap();
        let id_map = QuotientMap::new(&s3, &s3, s3.generators()).unwrap();
        for e in c.enumerate(1 << 20).unwrap() {
            assert_eq!(id_map.push(&e, &c).unwrap(), e);
        }
        // sign map S3 -> Z/2 (regular action on 2 points)
        let z2 = Arc::new(standard::zn_zm(1, 2).unwrap());
        let cz = EpiContext::new(Arc::clone(&z2), DEFAULT_ENUM_CAP).unwrap();
        let sign = QuotientMap::new(
            &s3,
            &z2,
            &[p("(1 2)", 2), Perm::identity(2)],
        )
        .unwrap();
        let mut images: Vec<EpiClass> = c
            .enumerate(1 << 20)
            .unwrap()
            .iter()
            .map(|e| sign.push(e, &cz).unwrap())
            .collect();
        images.sort_unstable();
        images.dedup();
        // Gaschütz: the pushforward hits all of Epi^ext(F2, Z/2)
        assert_eq!(images, cz.enumerate(1 << 20).unwrap());
    }

    #[test]
    fn quotient_map_rejects_non_homs() {
        let s3 = Arc::new(standard::symmetric(3).unwrap());
        let z3 = Arc::new(standard::zn_zm(1, 3).unwrap());
        // S3 has no surjection onto Z/3
        assert!(QuotientMap::new(&s3, &z3, &[p("(1 2 3)", 3), p("(1 2 3)", 3)]).is_err());
    }
}
