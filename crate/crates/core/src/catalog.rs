//! Built-in groups and example localities.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Limits, Subgroup};
use crate::locality::{build_locality, DeltaSpec, Locality};
use crate::perm::Perm;

/// Names accepted by [`locality`], plus `free1`.
pub const NAMES: [&str; 6] = ["free1", "delta-s", "o4plus2", "gl32-small", "gl32-full", "dihedral-demo"];

fn perm_group(degree: usize, gens: &[&[&[usize]]]) -> FiniteGroup {
    let gens: Vec<Perm> = gens
        .iter()
        .map(|cycles| {
            let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
            Perm::from_cycles(degree, &cycles).expect("valid built-in generator")
        })
        .collect();
    FiniteGroup::from_permutations(degree, &gens, &Limits::default()).expect("built-in group within cap")
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let cycle: Vec<usize> = (1..=n).collect();
    perm_group(n, &[&[&[1, 2]], &[&cycle]])
}

pub fn dihedral_8() -> FiniteGroup {
    perm_group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])
}

pub fn dihedral_12() -> FiniteGroup {
    perm_group(6, &[&[&[1, 2, 3, 4, 5, 6]], &[&[2, 6], &[3, 5]]])
}

/// `S3 ≀ C2`, of order 72: `(C3 × C3) ⋊ D8` with `D8` acting faithfully.
pub fn o4plus2() -> FiniteGroup {
    perm_group(6, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[1, 4], &[2, 5], &[3, 6]]])
}

/// Permutation of the nonzero vectors of `F_2^3` (encoded as `1..=7` by
/// their bits) induced by `v ↦ vA`; `rows[i]` is row `i` of `A` as a bit mask.
pub fn gl3_2_matrix(rows: [u8; 3]) -> Perm {
    let image = |v: u8| -> u8 {
        (0..3)
            .filter(|i| v & (1 << i) != 0)
            .fold(0, |acc, i| acc ^ rows[i])
    };
    Perm::from_images((1..=7u8).map(|v| (image(v) - 1) as u16).collect()).expect("invertible matrix")
}

/// Generating matrices of `GL_3(2)`: a transvection and the companion matrix
/// of `x³ + x + 1`.
pub const GL32_GENERATORS: [[u8; 3]; 2] = [[0b011, 0b010, 0b100], [0b010, 0b100, 0b011]];

pub fn gl32() -> FiniteGroup {
    let gens: Vec<Perm> = GL32_GENERATORS.iter().map(|&r| gl3_2_matrix(r)).collect();
    FiniteGroup::from_permutations(7, &gens, &Limits::default()).expect("GL3(2) within cap")
}

/// The least maximal p-subgroup by member list.
pub fn sylow_auto(g: &FiniteGroup, p: usize) -> Result<Subgroup> {
    g.sylow_p(p, &Limits::default())?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidInput("no p-subgroup".into()))
}

/// The largest normal p-subgroup of `h ≤ g`: intersection of its Sylow
/// p-subgroups, given one of them.
pub fn o_p_of(g: &FiniteGroup, h: &Subgroup, sylow: &Subgroup) -> Subgroup {
    let mut m = sylow.members.clone();
    for x in h.members.iter() {
        m.intersect_with(&g.conjugate_set(&sylow.members, x));
    }
    Subgroup { members: m }
}

/// Proper subgroups containing `s`, maximal among proper subgroups.
pub fn maximal_overgroups(g: &FiniteGroup, s: &Subgroup) -> Result<Vec<Subgroup>> {
    let over: Vec<Subgroup> = g
        .all_subgroups(&Limits::default())?
        .into_iter()
        .filter(|h| s.is_subgroup_of(h) && h.order() < g.order())
        .collect();
    Ok(crate::group::maximal_by_inclusion(&over))
}

/// Data of the `GL_3(2)` example: `S`, the two maximal overgroups `M_i` and
/// `P_i = O_2(M_i)`.
pub struct Gl32Data {
    pub group: Arc<FiniteGroup>,
    pub s: Subgroup,
    pub m: [Subgroup; 2],
    pub p: [Subgroup; 2],
}

pub fn gl32_data() -> Result<Gl32Data> {
    let g = gl32();
    let s = sylow_auto(&g, 2)?;
    let ms = maximal_overgroups(&g, &s)?;
    if ms.len() != 2 {
        return Err(Error::InvalidInput("expected two maximal overgroups".into()));
    }
    let p1 = o_p_of(&g, &ms[0], &s);
    let p2 = o_p_of(&g, &ms[1], &s);
    Ok(Gl32Data {
        group: Arc::new(g),
        s,
        m: [ms[0].clone(), ms[1].clone()],
        p: [p1, p2],
    })
}

pub fn gl32_small() -> Result<Locality> {
    let d = gl32_data()?;
    let spec = DeltaSpec::Explicit(vec![d.s.members.clone(), d.p[0].members.clone(), d.p[1].members.clone()]);
    build_locality(d.group, 2, &d.s, &spec)
}

pub fn gl32_full() -> Result<Locality> {
    let d = gl32_data()?;
    build_locality(d.group, 2, &d.s, &DeltaSpec::AllNonidentity)
}

pub fn o4plus2_locality() -> Result<Locality> {
    let g = Arc::new(o4plus2());
    let s = sylow_auto(&g, 2)?;
    build_locality(g, 2, &s, &DeltaSpec::AllNonidentity)
}

/// `S4` at `p = 3` with `Δ = {S}`: the carrier is `N(S) ≅ S3`.
pub fn delta_s() -> Result<Locality> {
    let g = Arc::new(symmetric(4));
    let s = sylow_auto(&g, 3)?;
    build_locality(g, 3, &s, &DeltaSpec::Explicit(vec![s.members.clone()]))
}

/// The dihedral group of order 12 at `p = 2` with all nonidentity objects.
pub fn dihedral_demo() -> Result<Locality> {
    let g = Arc::new(dihedral_12());
    let s = sylow_auto(&g, 2)?;
    build_locality(g, 2, &s, &DeltaSpec::AllNonidentity)
}

/// `Δ = {S}` locality of a group.
pub fn normalizer_example(g: FiniteGroup, p: usize) -> Result<Locality> {
    let g = Arc::new(g);
    let s = sylow_auto(&g, p)?;
    build_locality(g, p, &s, &DeltaSpec::Explicit(vec![s.members.clone()]))
}

/// The catalog localities by name (`free1` is not a locality).
pub fn locality(name: &str) -> Result<Locality> {
    match name {
        "delta-s" => delta_s(),
        "o4plus2" => o4plus2_locality(),
        "gl32-small" => gl32_small(),
        "gl32-full" => gl32_full(),
        "dihedral-demo" => dihedral_demo(),
        _ => Err(Error::InvalidInput(alloc::format!("unknown catalog locality `{name}`"))),
    }
}
