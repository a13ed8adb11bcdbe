//! Standard group families as permutation groups, plus the generator-file
//! loader.
//!
//! Families: symmetric and alternating groups in their natural action,
//! dihedral groups on the polygon vertices, products Z/n x Z/m in the
//! regular action, SL2(F_p) on the nonzero vectors of F_p^2, and PSL2(F_p)
//! on the projective line. Matrix groups appear only through these
//! permutation actions.
//!
//! Generator files hold one permutation per line in 1-based cycle notation;
//! an optional trailing `aut:` section lists permutations of the same
//! domain that normalize the group (used as outer-automorphism generators).

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{max_point, parse_cycles, perm_from_cycles, Perm, Point};

/// Permutation degree cap; covers the SL2(Z/2l) vector actions up to
/// 2l = 512 and keeps accidental blowups loud.
pub const DEGREE_CAP: usize = 1 << 18;

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 || degree > DEGREE_CAP {
        return Err(Error::CapExceeded(format!(
            "permutation degree {degree} outside 1..={DEGREE_CAP}"
        )));
    }
    Ok(())
}

fn is_prime(p: u64) -> bool {
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

pub fn symmetric(n: usize) -> Result<PermGroup> {
    check_degree(n.max(1))?;
    if n <= 1 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let mut cycle: Vec<Point> = (1..n as Point).collect();
    cycle.push(0);
    let long = Perm::from_images(cycle)?;
    let mut swap: Vec<Point> = (0..n as Point).collect();
    swap.swap(0, 1);
    let trans = Perm::from_images(swap)?;
    PermGroup::new(vec![trans, long])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    check_degree(n.max(1))?;
    if n <= 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let three = Perm::parse("(1 2 3)", n)?;
    if n == 3 {
        return PermGroup::new(vec![three]);
    }
    let second = if n % 2 == 1 {
        // full n-cycle is even
        let mut cycle: Vec<Point> = (1..n as Point).collect();
        cycle.push(0);
        Perm::from_images(cycle)?
    } else {
        // (2 3 ... n) fixes point 1 and is even
        let mut images: Vec<Point> = (0..n as Point).collect();
        for i in 1..n - 1 {
            images[i] = (i + 1) as Point;
        }
        images[n - 1] = 1;
        Perm::from_images(images)?
    };
    PermGroup::new(vec![three, second])
}

/// Dihedral group of order `order` (even, at least 6) acting on the
/// `order/2` polygon vertices.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    if order % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "dihedral order must be even, got {order}"
        )));
    }
    if order < 6 {
        return Err(Error::InvalidSpec(format!(
            "dihedral order must be at least 6, got {order}"
        )));
    }
    let k = order / 2;
    check_degree(k)?;
    let rotation = Perm::from_images((0..k).map(|i| ((i + 1) % k) as Point).collect())?;
    let reflection = Perm::from_images((0..k).map(|i| ((k - i) % k) as Point).collect())?;
    PermGroup::new(vec![rotation, reflection])
}

/// Z/n x Z/m in the regular action on n*m points; point (a, b) has index
/// a*m + b.
pub fn zn_zm(n: usize, m: usize) -> Result<PermGroup> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSpec("Z:0 factors are not allowed".into()));
    }
    let deg = n
        .checked_mul(m)
        .ok_or_else(|| Error::CapExceeded("Z:nxm degree overflow".into()))?;
    check_degree(deg)?;
    let a = Perm::from_images(
        (0..deg)
            .map(|i| {
                let (x, y) = (i / m, i % m);
                (((x + 1) % n) * m + y) as Point
            })
            .collect(),
    )?;
    let b = Perm::from_images(
        (0..deg)
            .map(|i| {
                let (x, y) = (i / m, i % m);
                (x * m + (y + 1) % m) as Point
            })
            .collect(),
    )?;
    PermGroup::new(vec![a, b])
}

/// 2x2 matrices over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatFp {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl MatFp {
    pub fn det(&self, p: u64) -> u64 {
        (self.a * self.d % p + p - self.b * self.c % p) % p
    }

    pub fn trace(&self, p: u64) -> u64 {
        (self.a + self.d) % p
    }
}

/// Vector indexing for the SL2(F_p) action: nonzero (a, b) in lexicographic
/// order, so (a, b) has index a*p + b - 1.
pub fn sl2_vector_index(a: u64, b: u64, p: u64) -> usize {
    debug_assert!(a != 0 || b != 0);
    (a * p + b - 1) as usize
}

pub fn sl2_index_vector(idx: usize, p: u64) -> (u64, u64) {
    let v = idx as u64 + 1;
    (v / p, v % p)
}

/// Permutation of the nonzero vectors of F_p^2 induced by a matrix acting
/// as v -> Mv on column vectors.
pub fn sl2_vector_perm(m: &MatFp, p: u64) -> Result<Perm> {
    let degree = (p * p - 1) as usize;
    let mut images = vec![0 as Point; degree];
    for idx in 0..degree {
        let (x, y) = sl2_index_vector(idx, p);
        let nx = (m.a * x + m.b * y) % p;
        let ny = (m.c * x + m.d * y) % p;
        images[idx] = sl2_vector_index(nx, ny, p) as Point;
    }
    Perm::from_images(images)
}

/// Recovers the matrix of a permutation in the SL2 vector action from the
/// images of the basis vectors.
pub fn sl2_perm_matrix(g: &Perm, p: u64) -> MatFp {
    let e1 = sl2_vector_index(1, 0, p);
    let e2 = sl2_vector_index(0, 1, p);
    let (a, c) = sl2_index_vector(g.image(e1 as Point) as usize, p);
    let (b, d) = sl2_index_vector(g.image(e2 as Point) as usize, p);
    MatFp { a, b, c, d }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    Ok(())
}

/// SL2(F_p) acting on the p^2 - 1 nonzero vectors; order p(p^2 - 1).
pub fn sl2(p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    check_degree((p * p - 1) as usize)?;
    let t = sl2_vector_perm(&MatFp { a: 1, b: 1, c: 0, d: 1 }, p)?;
    let l = sl2_vector_perm(&MatFp { a: 1, b: 0, c: 1, d: 1 }, p)?;
    PermGroup::new(vec![t, l])
}

/// Projective line index: [1 : k] -> k for k in F_p, [0 : 1] -> p.
fn proj_index(x: u64, y: u64, p: u64, inv: &[u64]) -> usize {
    if x == 0 {
        p as usize
    } else {
        (y * inv[x as usize] % p) as usize
    }
}

fn inverse_table(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    for x in 1..p {
        // Fermat
        let mut acc = 1u64;
        let mut base = x;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        inv[x as usize] = acc;
    }
    inv
}

/// Permutation of the projective line P^1(F_p) induced by a matrix.
pub fn psl2_line_perm(m: &MatFp, p: u64) -> Result<Perm> {
    let inv = inverse_table(p);
    let degree = (p + 1) as usize;
    let mut images = vec![0 as Point; degree];
    for idx in 0..degree {
        let (x, y) = if idx == p as usize { (0, 1) } else { (1, idx as u64) };
        let nx = (m.a * x + m.b * y) % p;
        let ny = (m.c * x + m.d * y) % p;
        images[idx] = proj_index(nx, ny, p, &inv) as Point;
    }
    Perm::from_images(images)
}

/// PSL2(F_p) acting on the projective line (p + 1 points); order
/// p(p^2 - 1)/gcd(2, p - 1).
pub fn psl2(p: u64) -> Result<PermGroup> {
    check_prime(p)?;
    check_degree((p + 1) as usize)?;
    let t = psl2_line_perm(&MatFp { a: 1, b: 1, c: 0, d: 1 }, p)?;
    let l = psl2_line_perm(&MatFp { a: 1, b: 0, c: 1, d: 1 }, p)?;
    PermGroup::new(vec![t, l])
}

fn smallest_nonresidue(p: u64) -> u64 {
    'outer: for v in 2..p {
        for x in 1..p {
            if x * x % p == v {
                continue 'outer;
            }
        }
        return v;
    }
    unreachable!("odd prime has a quadratic nonresidue")
}

/// Natural outer-automorphism realizers per family, as permutations of the
/// group's domain that normalize it.
pub enum NaturalAuts {
    Perms(Vec<Perm>),
    Unsupported(&'static str),
}

pub fn natural_auts_symmetric(_n: usize) -> NaturalAuts {
    // Out(S_n) is trivial away from n = 6; the exceptional S_6 outer
    // automorphism has no realizer inside Sym(6) acting on 6 points.
    NaturalAuts::Perms(Vec::new())
}

pub fn natural_auts_alternating(n: usize) -> Result<NaturalAuts> {
    if n < 3 {
        return Ok(NaturalAuts::Perms(Vec::new()));
    }
    Ok(NaturalAuts::Perms(vec![Perm::parse("(1 2)", n)?]))
}

pub fn natural_auts_dihedral(order: usize) -> Result<NaturalAuts> {
    let k = (order / 2) as u64;
    let mut auts = Vec::new();
    // i -> u*i mod k for units u realizes r -> r^u; together with the inner
    // maps these give the full automorphism group Hol(Z/k).
    for u in 2..k {
        if num_integer::gcd(u, k) == 1 {
            let perm = Perm::from_images(
                (0..k).map(|i| ((u * i) % k) as Point).collect(),
            )?;
            auts.push(perm);
        }
    }
    Ok(NaturalAuts::Perms(auts))
}

pub fn natural_auts_sl2(p: u64) -> Result<NaturalAuts> {
    // conjugation by diag(v, 1), v a nonresidue, realizes the outer half of
    // PGL2-conjugation
    let v = smallest_nonresidue(p);
    Ok(NaturalAuts::Perms(vec![sl2_vector_perm(
        &MatFp { a: v, b: 0, c: 0, d: 1 },
        p,
    )?]))
}

pub fn natural_auts_psl2(p: u64) -> Result<NaturalAuts> {
    let v = smallest_nonresidue(p);
    Ok(NaturalAuts::Perms(vec![psl2_line_perm(
        &MatFp { a: v, b: 0, c: 0, d: 1 },
        p,
    )?]))
}

/// GL2(Z/n) acting on the regular domain of (Z/n)^2 realizes the full
/// automorphism group; only the square case is supported.
pub fn natural_auts_zn_zm(n: usize, m: usize) -> Result<NaturalAuts> {
    if n != m {
        return Ok(NaturalAuts::Unsupported(
            "natural automorphisms are only provided for Z:nxn",
        ));
    }
    let nn = n as u64;
    let deg = n * n;
    let apply = |f: &dyn Fn(u64, u64) -> (u64, u64)| -> Result<Perm> {
        Perm::from_images(
            (0..deg)
                .map(|i| {
                    let (x, y) = ((i / n) as u64, (i % n) as u64);
                    let (nx, ny) = f(x, y);
                    (nx as usize * n + ny as usize) as Point
                })
                .collect(),
        )
    };
    let mut auts = vec![
        // S and T generate SL2(Z/n)
        apply(&|x, y| ((nn - y) % nn, x))?,
        apply(&|x, y| ((x + y) % nn, y))?,
    ];
    for u in 2..nn {
        if num_integer::gcd(u, nn) == 1 {
            auts.push(apply(&|x, y| (u * x % nn, y))?);
        }
    }
    Ok(NaturalAuts::Perms(auts))
}

/// A generator file parsed into group and automorphism generators.
pub struct LoadedGroup {
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub auts: Vec<Perm>,
}

/// Parses generator-file text: one permutation per line, `#` comments,
/// optional `aut:` section.
pub fn parse_group_file(text: &str) -> Result<LoadedGroup> {
    let mut gen_cycles: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut aut_cycles: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut in_auts = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "aut:" {
            in_auts = true;
            continue;
        }
        let cycles = parse_cycles(line)?;
        if in_auts {
            aut_cycles.push(cycles);
        } else {
            gen_cycles.push(cycles);
        }
    }
    if gen_cycles.is_empty() {
        return Err(Error::Parse("no generators in group file".into()));
    }
    let degree = gen_cycles
        .iter()
        .chain(aut_cycles.iter())
        .map(|c| max_point(c))
        .max()
        .unwrap_or(0) as usize;
    let degree = degree.max(1);
    check_degree(degree)?;
    let gens = gen_cycles
        .iter()
        .map(|c| perm_from_cycles(c, degree))
        .collect::<Result<Vec<_>>>()?;
    let auts = aut_cycles
        .iter()
        .map(|c| perm_from_cycles(c, degree))
        .collect::<Result<Vec<_>>>()?;
    Ok(LoadedGroup { degree, gens, auts })
}

pub fn load_group_file(path: &std::path::Path) -> Result<LoadedGroup> {
    let text = std::fs::read_to_string(path)?;
    parse_group_file(&text)
}

/// Checks that every automorphism generator normalizes the group.
pub fn check_normalizing(group: &PermGroup, auts: &[Perm]) -> Result<()> {
    for a in auts {
        for g in group.generators() {
            if !group.contains(&g.conjugated_by(a))? {
                return Err(Error::NotNormalizing);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(symmetric(4).unwrap().order_u64(), Some(24));
        assert_eq!(alternating(5).unwrap().order_u64(), Some(60));
        assert_eq!(dihedral(6).unwrap().order_u64(), Some(6));
        assert_eq!(dihedral(10).unwrap().order_u64(), Some(10));
        assert_eq!(zn_zm(2, 2).unwrap().order_u64(), Some(4));
        assert_eq!(zn_zm(2, 2).unwrap().degree(), 4);
    }

    #[test]
    fn sl2_family() {
        let g = sl2(7).unwrap();
        assert_eq!(g.order_u64(), Some(336));
        assert_eq!(g.degree(), 48);
        // order of "SL2:p" equals p(p^2-1)
        for p in [3u64, 5, 11] {
            assert_eq!(sl2(p).unwrap().order_u64(), Some(p * (p * p - 1)));
        }
    }

    #[test]
    fn psl2_family() {
        let g = psl2(7).unwrap();
        assert_eq!(g.order_u64(), Some(168));
        assert_eq!(g.degree(), 8);
        for p in [3u64, 5, 11, 13] {
            let expect = p * (p * p - 1) / num_integer::gcd(2, p - 1);
            assert_eq!(psl2(p).unwrap().order_u64(), Some(expect));
        }
    }

    #[test]
    fn dihedral_rejects_odd() {
        assert!(dihedral(7).is_err());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(sl2(6).is_err());
        assert!(psl2(9).is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let p = 7;
        let m = MatFp { a: 2, b: 3, c: 1, d: 2 };
        assert_eq!(m.det(p), 1);
        let g = sl2_vector_perm(&m, p).unwrap();
        assert_eq!(sl2_perm_matrix(&g, p), m);
    }

    #[test]
    fn group_file_roundtrip() {
        let text = "# klein four in its regular action\n(1 2)(3 4)\n(1 3)(2 4)\naut:\n(2 3)\n";
        let loaded = parse_group_file(text).unwrap();
        assert_eq!(loaded.degree, 4);
        let g = PermGroup::new(loaded.gens).unwrap();
        assert_eq!(g.order_u64(), Some(4));
        check_normalizing(&g, &loaded.auts).unwrap();
    }

    #[test]
    fn aut_realizers_normalize() {
        let a5 = alternating(5).unwrap();
        if let NaturalAuts::Perms(auts) = natural_auts_alternating(5).unwrap() {
            check_normalizing(&a5, &auts).unwrap();
        }
        let d10 = dihedral(10).unwrap();
        if let NaturalAuts::Perms(auts) = natural_auts_dihedral(10).unwrap() {
            assert!(!auts.is_empty());
            check_normalizing(&d10, &auts).unwrap();
        }
        let g = sl2(5).unwrap();
        if let NaturalAuts::Perms(auts) = natural_auts_sl2(5).unwrap() {
            check_normalizing(&g, &auts).unwrap();
        }
        let z33 = zn_zm(3, 3).unwrap();
        if let NaturalAuts::Perms(auts) = natural_auts_zn_zm(3, 3).unwrap() {
            check_normalizing(&z33, &auts).unwrap();
        }
    }
}
