//! The Markoff surface x² + y² + z² − xyz = 0 over F_p.
//!
//! 𝕏*(p) is the set of nonzero solutions; the Out(F₂)-action is realized
//! by the Vieta move R3: (x,y,z) -> (x,y,xy−z) and the transpositions
//! Tau12, Tau23 (the labeling of the three polynomial maps is a fixed
//! convention; the generated group, hence the orbit structure, does not
//! depend on it). All three moves abelianize to determinant −1, so the
//! index-2 orientation-preserving subgroup acts through even words: its
//! orbits are computed by traversing states paired with a sign flipped by
//! every generator.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::standard::{sl2, sl2_perm_matrix};

/// A point of 𝕏*(p), coordinates reduced mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkoffTriple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl MarkoffTriple {
    pub fn satisfies_equation(&self, p: u64) -> bool {
        let MarkoffTriple { x, y, z } = *self;
        let lhs = (x * x % p + y * y % p + z * z % p) % p;
        let rhs = x * y % p * z % p;
        lhs == rhs
    }

    fn pack(&self, p: u64) -> u64 {
        (self.x * p + self.y) * p + self.z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkoffMove {
    R3,
    Tau12,
    Tau23,
}

pub const MARKOFF_MOVES: [MarkoffMove; 3] =
    [MarkoffMove::R3, MarkoffMove::Tau12, MarkoffMove::Tau23];

/// Applies a move; all three are involutions preserving the equation.
pub fn apply_markoff_move(t: MarkoffTriple, m: MarkoffMove, p: u64) -> MarkoffTriple {
    match m {
        MarkoffMove::R3 => MarkoffTriple {
            x: t.x,
            y: t.y,
            z: (t.x * t.y % p + p - t.z) % p,
        },
        MarkoffMove::Tau12 => MarkoffTriple {
            x: t.y,
            y: t.x,
            z: t.z,
        },
        MarkoffMove::Tau23 => MarkoffTriple {
            x: t.x,
            y: t.z,
            z: t.y,
        },
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !primal(p) {
        return Err(Error::InvalidSpec(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn primal(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Least square roots mod p: table[v] = smallest r with r² ≡ v, or NONE.
fn sqrt_table(p: u64) -> Vec<u64> {
    const NONE: u64 = u64::MAX;
    let mut table = vec![NONE; p as usize];
    for r in 0..p {
        let v = (r * r % p) as usize;
        if table[v] == NONE {
            table[v] = r;
        }
    }
    table
}

/// Complete enumeration of 𝕏*(p), sorted lexicographically.
///
/// For fixed (x, y) the equation is quadratic in z with discriminant
/// (xy)² − 4(x² + y²); solutions come from the square-root table.
pub fn markoff_points(p: u64) -> Result<Vec<MarkoffTriple>> {
    check_odd_prime(p)?;
    let sqrts = sqrt_table(p);
    let inv2 = (p + 1) / 2; // 2⁻¹ mod p for odd p
    let mut points = Vec::new();
    for x in 0..p {
        for y in 0..p {
            let b = x * y % p; // z² - b z + c with c = x² + y²
            let c = (x * x + y * y) % p;
            let disc = (b * b % p + p - 4 * c % p) % p;
            let root = sqrts[disc as usize];
            if root == u64::MAX {
                continue;
            }
            let mut zs = [(b + root) % p * inv2 % p, (b + p - root) % p * inv2 % p];
            zs.sort_unstable();
            let count = if root == 0 { 1 } else { 2 };
            for &z in zs.iter().take(count) {
                let t = MarkoffTriple { x, y, z };
                if t != (MarkoffTriple { x: 0, y: 0, z: 0 }) {
                    debug_assert!(t.satisfies_equation(p));
                    points.push(t);
                }
            }
        }
    }
    points.sort_unstable();
    Ok(points)
}

/// Orbit decomposition of 𝕏*(p) under the full move action and its
/// orientation-preserving (even-word) subgroup, with the divisibility and
/// transitivity summaries.
#[derive(Clone, Debug)]
pub struct MarkoffReport {
    pub p: u64,
    pub point_count: u64,
    pub out_orbit_sizes: Vec<u64>,
    pub out_plus_orbit_sizes: Vec<u64>,
    pub transitive_out: bool,
    pub strong_approx: bool,
    pub divisibility_ok: bool,
}

pub fn markoff_orbits(p: u64) -> Result<MarkoffReport> {
    let points = markoff_points(p)?;
    let n = points.len();
    let packed: Vec<u64> = points.iter().map(|t| t.pack(p)).collect();
    let index_of = |t: &MarkoffTriple| -> usize {
        packed
            .binary_search(&t.pack(p))
            .expect("move image satisfies the equation")
    };

    // full action orbits
    let mut seen = vec![false; n];
    let mut out_orbit_sizes = Vec::new();
    for seed in 0..n {
        if seen[seed] {
            continue;
        }
        seen[seed] = true;
        let mut stack = vec![seed];
        let mut size = 0u64;
        while let Some(i) = stack.pop() {
            size += 1;
            for m in MARKOFF_MOVES {
                let j = index_of(&apply_markoff_move(points[i], m, p));
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out_orbit_sizes.push(size);
    }
    out_orbit_sizes.sort_unstable();

    // even-word orbits via the sign double cover: state (point, sign),
    // every generator flips the sign; the orbit is the +-slice projection
    let mut seen2 = vec![false; 2 * n];
    let mut out_plus_orbit_sizes = Vec::new();
    for seed in 0..n {
        if seen2[2 * seed] {
            continue;
        }
        seen2[2 * seed] = true;
        let mut stack = vec![2 * seed];
        let mut plus_size = 0u64;
        while let Some(state) = stack.pop() {
            let (i, sign) = (state / 2, state % 2);
            if sign == 0 {
                plus_size += 1;
            }
            for m in MARKOFF_MOVES {
                let j = index_of(&apply_markoff_move(points[i], m, p));
                let next = 2 * j + (1 - sign);
                if !seen2[next] {
                    seen2[next] = true;
                    stack.push(next);
                }
            }
        }
        out_plus_orbit_sizes.push(plus_size);
    }
    out_plus_orbit_sizes.sort_unstable();

    let point_count = n as u64;
    let transitive_out = out_orbit_sizes.len() == 1 && point_count > 0;
    let divisibility_ok = out_plus_orbit_sizes.iter().all(|&s| s % p == 0);
    let strong_approx = p != 3 && transitive_out && reduction_of_333_nonzero(p);
    Ok(MarkoffReport {
        p,
        point_count,
        out_orbit_sizes,
        out_plus_orbit_sizes,
        transitive_out,
        strong_approx,
        divisibility_ok,
    })
}

fn reduction_of_333_nonzero(p: u64) -> bool {
    // (3,3,3) is an integral point: 9+9+9 = 27; its reduction vanishes
    // only at p = 3
    debug_assert!(MarkoffTriple { x: 3 % p, y: 3 % p, z: 3 % p }.satisfies_equation(p));
    3 % p != 0
}

/// Strong approximation at p: surjectivity of the reduction of integral
/// points, implied by transitivity of the move action on 𝕏*(p) (the
/// nonzero integral point (3,3,3) then reaches every solution).
pub fn strong_approximation_report(p: u64) -> Result<(bool, String)> {
    if p == 2 || p == 3 {
        return Err(Error::InvalidSpec(format!(
            "strong approximation report needs p > 3, got {p}"
        )));
    }
    let report = markoff_orbits(p)?;
    let narrative = if report.strong_approx {
        format!(
            "strong approximation holds at p = {p}: the move action is transitive on all {} \
             nonzero solutions, and the integral point (3,3,3) reduces to one of them",
            report.point_count
        )
    } else {
        format!(
            "strong approximation NOT certified at p = {p}: the move action has {} orbits",
            report.out_orbit_sizes.len()
        )
    };
    Ok((report.strong_approx, narrative))
}

/// Both sides of the trace bijection: |𝕏*(p)| versus the number of
/// GL₂(F_p)-conjugacy classes of generating pairs of SL₂(F_p) whose
/// commutator has trace −2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub p: u64,
    pub markoff_count: u64,
    pub epi_trace_count: u64,
}

/// Brute-force tier of the bijection check, default p ≤ 13.
pub fn crosscheck_epi_bijection(p: u64, max_p: u64) -> Result<CrosscheckReport> {
    check_odd_prime(p)?;
    if p > max_p {
        return Err(Error::CapExceeded(format!(
            "crosscheck brute-force tier is capped at p <= {max_p}"
        )));
    }
    let markoff_count = markoff_points(p)?.len() as u64;

    let group = std::sync::Arc::new(sl2(p)?);
    let ctx = crate::epi::EpiContext::new(group, crate::group::DEFAULT_ENUM_CAP)?;
    let classes = ctx.enumerate(u64::MAX)?;
    let minus_two = p - 2;
    let slice: Vec<usize> = classes
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let commutator = e
                .y
                .compose(&e.x)
                .compose(&e.y.inverse())
                .compose(&e.x.inverse());
            sl2_perm_matrix(&commutator, p).trace(p) == minus_two
        })
        .map(|(i, _)| i)
        .collect();

    // fold by GL2-conjugation: the outer action is realized by the
    // diagonal nonresidue conjugation
    let auts = match crate::standard::natural_auts_sl2(p)? {
        crate::standard::NaturalAuts::Perms(a) => a,
        _ => unreachable!(),
    };
    let mut orbit_count = 0u64;
    let mut visited: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for &i in &slice {
        if visited.contains(&i) {
            continue;
        }
        orbit_count += 1;
        let mut stack = vec![i];
        visited.insert(i);
        while let Some(j) = stack.pop() {
            for a in &auts {
                let image = ctx.apply_aut(&classes[j], a);
                let k = classes
                    .binary_search(&image)
                    .expect("automorphism image is a class");
                debug_assert!(slice.contains(&k));
                if visited.insert(k) {
                    stack.push(k);
                }
            }
        }
    }
    Ok(CrosscheckReport {
        p,
        markoff_count,
        epi_trace_count: orbit_count,
    })
}

/// Expected |𝕏*(p)|: p(p+3) when p ≡ 1 mod 4, p(p−3) when p ≡ 3 mod 4.
pub fn expected_point_count(p: u64) -> u64 {
    if p % 4 == 1 {
        p * (p + 3)
    } else {
        p * (p - 3)
    }
}

/// One CSV row of the sweep output.
pub fn csv_row(report: &MarkoffReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        report.p,
        report.point_count,
        report.out_orbit_sizes.len(),
        report.out_plus_orbit_sizes.len(),
        report.out_orbit_sizes.last().copied().unwrap_or(0),
        report.transitive_out,
        report.divisibility_ok
    )
}

pub const CSV_HEADER: &str =
    "p,point_count,n_orbits_out,n_orbits_out_plus,max_orbit,transitive,divisibility_ok";

/// Primes in an inclusive range.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| primal(p)).collect()
}

/// The three moves abelianize to determinant −1; checked symbolically once
/// (R3 corresponds to a -> a⁻¹-type maps, the transpositions to swaps).
pub fn validate_markoff_determinants() {
    // abelianized matrices of the free-group maps behind the moves
    let dets = [
        (-1i64, 0i64, 0i64, 1i64), // a -> a⁻¹, b -> b
        (0, 1, 1, 0),              // swap
        (-1, 1, 0, 1),             // a -> a⁻¹, b -> ab
    ];
    for (a, b, c, d) in dets {
        assert_eq!(a * d - b * c, -1);
    }
}

#[allow(dead_code)]
fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts_match_formula() {
        assert_eq!(markoff_points(5).unwrap().len(), 40);
        assert_eq!(markoff_points(7).unwrap().len(), 28);
        assert_eq!(markoff_points(3).unwrap().len(), 0);
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            assert_eq!(
                markoff_points(p).unwrap().len() as u64,
                expected_point_count(p)
            );
        }
    }

    #[test]
    fn rejects_bad_p() {
        assert!(markoff_points(2).is_err());
        assert!(markoff_points(9).is_err());
    }

    #[test]
    fn moves_are_involutions_preserving_equation() {
        let p = 7;
        for t in markoff_points(p).unwrap() {
            for m in MARKOFF_MOVES {
                let u = apply_markoff_move(t, m, p);
                assert!(u.satisfies_equation(p));
                assert_eq!(apply_markoff_move(u, m, p), t);
            }
        }
    }

    #[test]
    fn r3_example_mod_7() {
        let t = MarkoffTriple { x: 3, y: 3, z: 3 };
        assert_eq!(
            apply_markoff_move(t, MarkoffMove::R3, 7),
            MarkoffTriple { x: 3, y: 3, z: 6 }
        );
        assert_eq!(
            apply_markoff_move(MarkoffTriple { x: 1, y: 2, z: 5 }, MarkoffMove::Tau12, 7),
            MarkoffTriple { x: 2, y: 1, z: 5 }
        );
    }

    #[test]
    fn orbits_mod_7() {
        let report = markoff_orbits(7).unwrap();
        assert_eq!(report.out_orbit_sizes, vec![28]);
        assert!(report.transitive_out);
        assert!(report.divisibility_ok);
        assert!(report.strong_approx);
    }

    #[test]
    fn orbits_mod_5() {
        let report = markoff_orbits(5).unwrap();
        assert!(report.transitive_out);
        assert_eq!(report.point_count, 40);
        assert!(report.out_plus_orbit_sizes.iter().all(|s| s % 5 == 0));
    }

    #[test]
    fn empty_surface_mod_3() {
        let report = markoff_orbits(3).unwrap();
        assert_eq!(report.point_count, 0);
        assert!(!report.transitive_out);
        assert!(strong_approximation_report(3).is_err());
    }

    #[test]
    fn determinant_bookkeeping() {
        validate_markoff_determinants();
    }

    #[test]
    fn crosscheck_tiny() {
        let r = crosscheck_epi_bijection(3, 13).unwrap();
        assert_eq!(r.markoff_count, 0);
        assert_eq!(r.epi_trace_count, 0);
    }
}
