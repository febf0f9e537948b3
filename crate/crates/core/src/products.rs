//! Products of partial normal subgroups.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::locality::Locality;
use crate::normal::{is_partial_normal, PartialNormal};
use crate::omega::{compute_omega, OmegaPoset};
use crate::quotient::quotient;
use crate::report::Report;
use crate::Elem;

/// `XY = {Π(x,y) : x ∈ X, y ∈ Y, (x,y) ∈ D}`.
pub fn product_set(l: &Locality, x: &ElemSet, y: &ElemSet) -> ElemSet {
    let ys = y.to_vec();
    l.set(x.iter().flat_map(|a| ys.iter().filter_map(move |&b| l.mul(a, b))))
}

/// The least `(x, y)` with `x ∈ M`, `y ∈ N`, `xy = g` and `S_{(x,y)} = S_g`;
/// `Ok(None)` if `g ∈ MN` has none.
pub fn mn_decomposition(l: &Locality, m: &ElemSet, n: &ElemSet, g: Elem) -> Result<Option<(Elem, Elem)>> {
    if g >= l.size() || !product_set(l, m, n).contains(g) {
        return Err(Error::InvalidInput(format!("{g} is not in MN")));
    }
    let sg = l.s_g(g);
    for x in m.iter() {
        for y in n.iter() {
            if l.mul(x, y) == Some(g) && l.s_w(&[x, y]).ok() == Some(sg) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// `MN = NM ⊴ L`, `S ∩ MN = (S∩M)(S∩N)` and decompositions, by direct
/// search and through the quotient by `K = M ∩ N`.
pub fn check_product_theorem(l: &Arc<Locality>, omega: &OmegaPoset, m: &ElemSet, n: &ElemSet) -> Report {
    let mut r = Report::new();
    let mn = product_set(l, m, n);
    let nm = product_set(l, n, m);
    r.case("product-commutes", mn == nm, String::new);
    r.case("product-partial-normal", is_partial_normal(l, &mn), String::new);
    let u = m.intersection(l.s());
    let v = n.intersection(l.s());
    r.case("sylow-of-product", mn.intersection(l.s()) == product_set(l, &u, &v), String::new);
    let mut direct = ElemSet::new(l.size());
    for g in mn.iter() {
        let d = mn_decomposition(l, m, n, g).ok().flatten();
        r.case("decomposition-exists", d.is_some(), || l.label(g).into());
        if d.is_some() {
            direct.insert(g);
        }
    }

    let k = m.intersection(n);
    if k.len() == 1 || k.is_subset(l.s()) {
        let nu = l.normalizer(l.sub_id(&u).expect("S∩M is a subgroup"));
        let nv = l.normalizer(l.sub_id(&v).expect("S∩N is a subgroup"));
        r.case("normalizes-sylow-of-other", m.is_subset(&nv) && n.is_subset(&nu), String::new);
    }

    // quotient route
    let kpn = match PartialNormal::new(l, omega, k.clone()) {
        Ok(x) => x,
        Err(e) => {
            r.fail("intersection-partial-normal", format!("{e}"));
            return r;
        }
    };
    r.case("intersection-partial-normal", true, String::new);
    let (q, proj) = match quotient(l, &kpn) {
        Ok(x) => x,
        Err(e) => {
            r.fail("quotient-by-intersection", format!("{e}"));
            return r;
        }
    };
    let mbar = proj.apply_set(&q, m);
    let nbar = proj.apply_set(&q, n);
    r.case("images-meet-trivially", mbar.intersection(&nbar) == q.set([0]), String::new);
    let mnbar = product_set(&q, &mbar, &nbar);
    let lifted = proj.preimage(l, &mnbar);
    r.case("routes-agree", lifted == mn && lifted == direct, || {
        format!("{} lifted, {} direct, {} in MN", lifted.len(), direct.len(), mn.len())
    });
    let xs: Vec<Elem> = m.iter().filter(|&x| kpn.up_max.contains(x)).collect();
    let ys: Vec<Elem> = n.iter().filter(|&y| kpn.up_max.contains(y)).collect();
    for gb in mnbar.iter() {
        let found = xs.iter().any(|&x| {
            ys.iter().any(|&y| {
                l.mul(x, y).is_some_and(|xy| {
                    q.mul(proj.map[x], proj.map[y]) == Some(gb)
                        && kpn.up_max.contains(xy)
                        && l.s_w(&[x, y]).ok() == Some(l.s_g(xy))
                })
            })
        });
        r.case("maximal-lift-decomposition", found, || q.label(gb).into());
    }
    r
}

/// Iterated pairwise product in list order.
pub fn join_family(l: &Locality, family: &[ElemSet]) -> ElemSet {
    let mut acc = l.set([0]);
    for n in family {
        acc = product_set(l, &acc, n);
    }
    acc
}

/// `Π(w)` over `w = (g_1, …, g_k) ∈ D`, `k ≤ max_len`, with `g_i ∈ N_{j_i}`
/// and `j_1 ≤ … ≤ j_k`.
pub fn ordered_word_products(l: &Locality, family: &[ElemSet], max_len: usize) -> ElemSet {
    let mut out = l.set([0]);
    let mut frontier: Vec<(crate::locality::WordState, usize)> = alloc::vec![(l.state(&[]), 0)];
    let mut seen = alloc::collections::BTreeSet::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &(st, j0) in &frontier {
            for (j, n) in family.iter().enumerate().skip(j0) {
                for g in n.iter() {
                    let st2 = l.state_of_appended(st, g);
                    if !l.state_in_domain(st2) {
                        continue;
                    }
                    if seen.insert((st2, j)) {
                        out.insert(l.state_product(st2).unwrap());
                        next.push((st2, j));
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Join of a family: partial normal, contains every member, independent of
/// order and equal to the ordered-word products of length at most 3.
pub fn check_join(l: &Locality, family: &[ElemSet]) -> Report {
    let mut r = Report::new();
    let j = join_family(l, family);
    r.case("join-partial-normal", is_partial_normal(l, &j), String::new);
    r.case("join-contains-members", family.iter().all(|n| n.is_subset(&j)), String::new);
    let mut rev = family.to_vec();
    rev.reverse();
    r.case("join-order-independent", join_family(l, &rev) == j, String::new);
    let words = ordered_word_products(l, family, 3);
    let ok = if family.len() <= 3 { words == j } else { words.is_subset(&j) };
    r.case("join-ordered-words", ok, || format!("{} vs {}", words.len(), j.len()));
    r
}

/// Runs [`check_product_theorem`] over all pairs and [`check_join`] over all
/// triples of `normals`, plus associativity of the product.
pub fn check_products(l: &Arc<Locality>, normals: &[ElemSet]) -> Report {
    let omega = compute_omega(l);
    let mut r = Report::new();
    for (i, m) in normals.iter().enumerate() {
        for n in &normals[i..] {
            r.merge("", check_product_theorem(l, &omega, m, n));
            r.merge("", check_join(l, &[m.clone(), n.clone()]));
        }
    }
    let cap = normals.len().min(6);
    for a in &normals[..cap] {
        for b in &normals[..cap] {
            for c in &normals[..cap] {
                let left = product_set(l, &product_set(l, a, b), c);
                let right = product_set(l, a, &product_set(l, b, c));
                r.case("product-associative", left == right, String::new);
                r.merge("", check_join(l, &[a.clone(), b.clone(), c.clone()]));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::normal::enumerate_partial_normals;

    #[test]
    fn trivial_factors() {
        let l = catalog::gl32_small().unwrap();
        let one = l.set([0]);
        let all = l.full();
        assert_eq!(product_set(&l, &one, &all), all);
        assert_eq!(product_set(&l, &all, &one), all);
        assert_eq!(mn_decomposition(&l, &all, &one, 5).unwrap(), Some((5, 0)));
        assert!(mn_decomposition(&l, &one, &one, 5).is_err());
    }

    #[test]
    fn dihedral_products() {
        let l = Arc::new(catalog::dihedral_demo().unwrap());
        let ns = enumerate_partial_normals(&l).normals;
        let r = check_products(&l, &ns);
        assert!(r.ok(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
