//! Finite permutations on `{0, …, n-1}`.
//!
//! Points are 0-based internally; the text format is 1-based disjoint cycle
//! notation, e.g. `(1 2 3)(4 5)`, with the identity spelled `()`.
//! Composition applies the right factor first: `(p * q)(i) = p(q(i))`.

use std::fmt;

use crate::error::{Error, Result};

/// A point of the permutation domain.
pub type Point = u32;

/// A permutation given by its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Point>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<Point>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if (img as usize) >= n || seen[img as usize] {
                return Err(Error::Parse(format!(
                    "image array of length {n} is not a bijection"
                )));
            }
            seen[img as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline(always)]
    pub fn image(&self, i: Point) -> Point {
        self.images[i as usize]
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as Point == img)
    }

    /// `(self * other)(i) = self(other(i))`: `other` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0 as Point; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as Point;
        }
        Perm { images: inv }
    }

    /// Conjugate `g * self * g^{-1}`, i.e. `self` with points relabelled by `g`.
    pub fn conjugated_by(&self, g: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), g.degree());
        let mut images = vec![0 as Point; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[img as usize];
        }
        Perm { images }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        debug_assert_eq!(self.degree(), other.degree());
        (0..self.degree() as Point)
            .all(|i| self.image(other.image(i)) == other.image(self.image(i)))
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u128 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u128 = 0;
            let mut p = start as Point;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.image(p);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        u64::try_from(ord).expect("element order overflows u64")
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start as Point;
            while !seen[p as usize] {
                seen[p as usize] = true;
                p = self.image(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Nontrivial cycles, each rotated to start at its least point and
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start as Point {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start as Point;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Least point moved, if any.
    pub fn min_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i as Point != img)
            .map(|(i, _)| i as Point)
    }

    /// Parses 1-based disjoint cycle notation at a fixed degree.
    pub fn parse(s: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycles(s)?;
        perm_from_cycles(&cycles, degree)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]", self)
    }
}

/// Parses cycle notation into raw 1-based cycles without fixing a degree.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<u64>>> {
    let s = s.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    if rest.is_empty() {
        return Err(Error::Parse("empty permutation".into()));
    }
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in permutation: {s}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced cycle in permutation: {s}")))?;
        let body = &rest[1..close];
        rest = &rest[close + 1..];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point `{tok}` in permutation: {s}")))?;
            if p == 0 {
                return Err(Error::Parse("points are 1-based; 0 is not allowed".into()));
            }
            cycle.push(p);
        }
        match cycle.len() {
            0 => {} // "()" — identity contribution
            1 => {} // fixed point, allowed and ignored
            _ => {
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != cycle.len() {
                    return Err(Error::Parse(format!("repeated point in cycle: {s}")));
                }
                cycles.push(cycle);
            }
        }
    }
    Ok(cycles)
}

/// Largest point mentioned in raw cycles (1-based), 0 if none.
pub fn max_point(cycles: &[Vec<u64>]) -> u64 {
    cycles.iter().flatten().copied().max().unwrap_or(0)
}

/// Materializes raw 1-based cycles as a permutation of the given degree.
pub fn perm_from_cycles(cycles: &[Vec<u64>], degree: usize) -> Result<Perm> {
    let mut images: Vec<Point> = (0..degree as Point).collect();
    for cycle in cycles {
        for w in 0..cycle.len() {
            let from = cycle[w] - 1;
            let to = cycle[(w + 1) % cycle.len()] - 1;
            if from >= degree as u64 || to >= degree as u64 {
                return Err(Error::Parse(format!(
                    "point {} exceeds degree {}",
                    cycle[w], degree
                )));
            }
            if images[from as usize] != from as Point {
                return Err(Error::Parse("cycles are not disjoint".into()));
            }
            images[from as usize] = to as Point;
        }
    }
    // disjointness of full cycles guarantees bijectivity, but a cheap
    // validation keeps corrupt inputs from slipping through
    Perm::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // p=(1 2 3), q=(1 2) on 3 points → p·q = (1 3)
        let a = p("(1 2 3)", 3);
        let b = p("(1 2)", 3);
        assert_eq!(a.compose(&b), p("(1 3)", 3));
        assert_eq!(a.order(), 3);
    }

    #[test]
    fn identity_cases() {
        let id = Perm::identity(4);
        assert_eq!(id.inverse(), id);
        assert_eq!(id.order(), 1);
        assert_eq!(format!("{id}"), "()");
        assert_eq!(Perm::parse("()", 4).unwrap(), id);
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
    }

    #[test]
    fn display_round_trip() {
        let g = p("(1 2 3)(4 5)", 6);
        assert_eq!(format!("{g}"), "(1 2 3)(4 5)");
        assert_eq!(Perm::parse(&format!("{g}"), 6).unwrap(), g);
    }

    #[test]
    fn conjugation_relabels_points() {
        let g = p("(1 2 3)", 5);
        let c = p("(3 4)", 5);
        assert_eq!(g.conjugated_by(&c), p("(1 2 4)", 5));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("(1 1 2)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse("(0 1)", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
    }
}
