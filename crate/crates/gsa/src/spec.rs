//! Group specification strings.
//!
//! Grammar: `Sn:<n> | An:<n> | D:<2k> | Z:<n>x<m> | SL2:<p> | PSL2:<p> |
//! perm:<path>`, with an optional suffix `@aut=natural|<path>`. `natural`
//! selects the family's built-in outer-automorphism realizers (for
//! `perm:` files, the file's own `aut:` section); a path loads
//! automorphism permutations from a separate file, one per line.

use std::path::PathBuf;

use gsa_core::error::{Error, Result};
use gsa_core::group::PermGroup;
use gsa_core::standard::{self, NaturalAuts};
use gsa_core::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Sym(u64),
    Alt(u64),
    Dihedral(u64),
    /// Z/n x Z/m in the regular action; covers cyclic groups via n = 1.
    Product(u64, u64),
    Sl2(u64),
    Psl2(u64),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutSource {
    None,
    Natural,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: Family,
    pub aut_source: AutSource,
    pub raw: String,
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::InvalidSpec(format!("bad {what}: `{s}`")))
}

/// Parses a group spec string.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let raw = s.to_string();
    let (body, aut) = match s.split_once("@aut=") {
        None => (s, AutSource::None),
        Some((body, "natural")) => (body, AutSource::Natural),
        Some((body, path)) if !path.is_empty() => (body, AutSource::File(PathBuf::from(path))),
        Some(_) => {
            return Err(Error::InvalidSpec(format!(
                "empty @aut= argument in `{s}`"
            )))
        }
    };
    let (head, arg) = body
        .split_once(':')
        .ok_or_else(|| Error::InvalidSpec(format!("expected `family:arg` in `{s}`")))?;
    let family = match head {
        "Sn" => Family::Sym(parse_u64(arg, "Sn degree")?),
        "An" => Family::Alt(parse_u64(arg, "An degree")?),
        "D" => {
            let order = parse_u64(arg, "dihedral order")?;
            if order % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "dihedral order must be even, got {order}"
                )));
            }
            Family::Dihedral(order)
        }
        "Z" => {
            let (n, m) = arg
                .split_once('x')
                .ok_or_else(|| Error::InvalidSpec(format!("expected Z:<n>x<m> in `{s}`")))?;
            Family::Product(parse_u64(n, "Z factor")?, parse_u64(m, "Z factor")?)
        }
        "SL2" => Family::Sl2(parse_u64(arg, "SL2 prime")?),
        "PSL2" => Family::Psl2(parse_u64(arg, "PSL2 prime")?),
        "perm" => Family::File(PathBuf::from(arg)),
        other => {
            return Err(Error::InvalidSpec(format!(
                "unknown group family `{other}` in `{s}`"
            )))
        }
    };
    Ok(GroupSpec {
        family,
        aut_source: aut,
        raw,
    })
}

/// A resolved spec: the group plus its automorphism realizers (possibly
/// empty), already checked to normalize the group.
pub struct ResolvedGroup {
    pub group: PermGroup,
    pub auts: Vec<Perm>,
    /// Whether automorphism generators were requested and available.
    pub auts_available: bool,
}

pub fn resolve(spec: &GroupSpec) -> Result<ResolvedGroup> {
    let (group, natural, file_auts) = match &spec.family {
        Family::Sym(n) => (
            standard::symmetric(*n as usize)?,
            standard::natural_auts_symmetric(*n as usize),
            None,
        ),
        Family::Alt(n) => (
            standard::alternating(*n as usize)?,
            standard::natural_auts_alternating(*n as usize)?,
            None,
        ),
        Family::Dihedral(order) => (
            standard::dihedral(*order as usize)?,
            standard::natural_auts_dihedral(*order as usize)?,
            None,
        ),
        Family::Product(n, m) => (
            standard::zn_zm(*n as usize, *m as usize)?,
            standard::natural_auts_zn_zm(*n as usize, *m as usize)?,
            None,
        ),
        Family::Sl2(p) => (standard::sl2(*p)?, standard::natural_auts_sl2(*p)?, None),
        Family::Psl2(p) => (standard::psl2(*p)?, standard::natural_auts_psl2(*p)?, None),
        Family::File(path) => {
            let loaded = standard::load_group_file(path)?;
            let group = PermGroup::new(loaded.gens)?;
            (group, NaturalAuts::Perms(Vec::new()), Some(loaded.auts))
        }
    };
    let (auts, auts_available) = match &spec.aut_source {
        AutSource::None => (Vec::new(), false),
        AutSource::Natural => match (natural, file_auts) {
            (_, Some(from_file)) => (from_file, true),
            (NaturalAuts::Perms(perms), None) => (perms, true),
            (NaturalAuts::Unsupported(why), None) => {
                return Err(Error::InvalidSpec(format!(
                    "@aut=natural unavailable for `{}`: {why}",
                    spec.raw
                )))
            }
        },
        AutSource::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let mut auts = Vec::new();
            let degree = group.degree();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') || line == "aut:" {
                    continue;
                }
                auts.push(Perm::parse(line, degree)?);
            }
            (auts, true)
        }
    };
    standard::check_normalizing(&group, &auts)?;
    Ok(ResolvedGroup {
        group,
        auts,
        auts_available,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        assert_eq!(
            parse_group_spec("D:10").unwrap().family,
            Family::Dihedral(10)
        );
        let s = parse_group_spec("SL2:7@aut=natural").unwrap();
        assert_eq!(s.family, Family::Sl2(7));
        assert_eq!(s.aut_source, AutSource::Natural);
        assert_eq!(
            parse_group_spec("Z:2x2").unwrap().family,
            Family::Product(2, 2)
        );
        assert!(parse_group_spec("D:7").is_err());
        assert!(parse_group_spec("Q:8").is_err());
        assert!(parse_group_spec("SL2:abc").is_err());
    }

    #[test]
    fn resolves_with_auts() {
        let spec = parse_group_spec("D:10@aut=natural").unwrap();
        let resolved = resolve(&spec).unwrap();
        assert_eq!(resolved.group.order_u64(), Some(10));
        assert!(resolved.auts_available);
        assert!(!resolved.auts.is_empty());
    }

    #[test]
    fn rejects_non_prime() {
        let spec = parse_group_spec("PSL2:8").unwrap();
        assert!(resolve(&spec).is_err());
    }
}
