//! The library's answers, keyed like the oracle's.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use lockit_core::normal::{enumerate_partial_normals, maximal_cosets, normal_closure, PartialNormal};
use lockit_core::omega::{fusion_morphisms, is_fully_normalized};
use lockit_core::products::product_set;
use lockit_core::{build_locality, catalog, compute_omega, DeltaSpec, ElemSet, FiniteGroup, Limits, Locality, OmegaPoset, Subgroup};
use serde_json::{json, Value};

pub struct Named {
    pub group: Arc<FiniteGroup>,
    by_name: HashMap<String, usize>,
}

impl Named {
    pub fn new(g: FiniteGroup) -> Named {
        let by_name = g.elements().map(|x| (g.perm(x).unwrap().cycle_string(), x)).collect();
        Named {
            group: Arc::new(g),
            by_name,
        }
    }

    pub fn name(&self, x: usize) -> String {
        self.group.perm(x).unwrap().cycle_string()
    }

    pub fn names(&self, set: &ElemSet) -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|x| self.name(x)).collect();
        v.sort();
        v
    }

    pub fn subgroup(&self, names: &Value) -> Subgroup {
        let members = self.group.set(
            names
                .as_array()
                .expect("name list")
                .iter()
                .map(|n| self.by_name[n.as_str().unwrap()]),
        );
        Subgroup { members }
    }

    /// Carrier elements sorted by name.
    pub fn sorted_carrier(&self, l: &Locality) -> Vec<usize> {
        let mut v: Vec<usize> = l.elements().collect();
        v.sort_by_key(|&x| self.name(l.to_group(x).unwrap()));
        v
    }

    pub fn local_names(&self, l: &Locality, set: &ElemSet) -> Vec<String> {
        self.names(&l.group_set(set).unwrap())
    }
}

pub fn normal_table(l: &Locality, omega: &OmegaPoset) -> Value {
    let mut rows: Vec<[usize; 4]> = enumerate_partial_normals(l)
        .normals
        .into_iter()
        .map(|n| {
            let pn = PartialNormal::new(l, omega, n).unwrap();
            let blocks = maximal_cosets(l, &pn).unwrap().blocks.len();
            [pn.len(), l.lattice().order(pn.t), pn.up_max.len(), blocks]
        })
        .collect();
    rows.sort();
    json!(rows)
}

fn omega_json(nm: &Named, l: &Locality, om: &OmegaPoset) -> Value {
    let lat = l.lattice();
    let mut members: Vec<(usize, Vec<String>)> = om
        .members
        .iter()
        .map(|&m| (om.dim(l, m), nm.local_names(l, lat.set(m))))
        .collect();
    members.sort();
    json!({ "members": members, "dimension": om.dimension() })
}

fn objects_from(l: &Locality, nm: &Named, names: &[&Value]) -> Vec<usize> {
    names
        .iter()
        .map(|v| l.sub_id_from_group(&nm.subgroup(v).members).unwrap())
        .collect()
}

/// Every library value with a golden counterpart.
pub fn library_values(golden: &Value) -> Value {
    let mut out = BTreeMap::new();
    out.insert(
        "normalizer-carriers",
        json!({
            "s3-p3": catalog::normalizer_example(catalog::symmetric(3), 3).unwrap().size(),
            "s3-p2": catalog::normalizer_example(catalog::symmetric(3), 2).unwrap().size(),
            "d8-p2": catalog::normalizer_example(catalog::dihedral_8(), 2).unwrap().size(),
            "s4-p3": catalog::normalizer_example(catalog::symmetric(4), 3).unwrap().size(),
            "gl32-p2": catalog::normalizer_example(catalog::gl32(), 2).unwrap().size(),
        }),
    );

    let gold = &golden["gl32"];
    let nm = Named::new(catalog::gl32());
    let g = nm.group.clone();
    let s = nm.subgroup(&gold["s"]);
    let mut ms = catalog::maximal_overgroups(&g, &s).unwrap();
    ms.sort_by_key(|m| nm.names(&m.members));
    let ps: Vec<Subgroup> = ms.iter().map(|m| catalog::o_p_of(&g, m, &s)).collect();
    let off = ms[1]
        .members
        .iter()
        .filter(|&x| !ms[0].contains(x))
        .min_by_key(|&x| nm.name(x))
        .unwrap();
    let p1g = g.conjugate_subgroup(&ps[0], off);
    let elementary =
        p1g.order() == 4 && p1g.members.iter().all(|a| g.mul(a, a) == 0) && p1g.members.iter().all(|a| p1g.members.iter().all(|b| g.mul(a, b) == g.mul(b, a)));
    out.insert(
        "gl32",
        json!({
            "order": g.order(),
            "subgroups": g.all_subgroups(&Limits::default()).unwrap().len(),
            "sylow-count": g.sylow_p(2, &Limits::default()).unwrap().len(),
            "normalizer-s": g.normalizer(&s).order(),
            "m": [nm.names(&ms[0].members), nm.names(&ms[1].members)],
            "p": [nm.names(&ps[0].members), nm.names(&ps[1].members)],
            "p1-conjugate": {
                "by": nm.name(off),
                "members": nm.names(&p1g.members),
                "elementary-abelian": elementary,
                "distinct": p1g != ps[0],
                "inside-s": p1g.is_subgroup_of(&s),
            },
        }),
    );

    let small_spec = DeltaSpec::Explicit(vec![s.members.clone(), ps[0].members.clone(), ps[1].members.clone()]);
    let small = build_locality(g.clone(), 2, &s, &small_spec).unwrap();
    let om = compute_omega(&small);
    let lat = small.lattice();
    let m_union = ms[0].members.union(&ms[1].members);
    let s_g: BTreeMap<String, usize> = small
        .elements()
        .map(|x| (nm.name(small.to_group(x).unwrap()), lat.order(small.s_g(x))))
        .collect();
    let p1 = small.sub_id_from_group(&ps[0].members).unwrap();
    let zinv = small
        .s_elements()
        .iter()
        .copied()
        .find(|&x| x != 0 && small.s_elements().iter().all(|&y| small.mul(x, y) == small.mul(y, x)))
        .unwrap();
    let one_star = om.star(&small, lat.bottom());
    out.insert(
        "gl32-small",
        json!({
            "carrier": nm.names(&small.carrier_in_group().unwrap()),
            "m1-union-m2": nm.names(&m_union),
            "s-g-orders": s_g,
            "omega": omega_json(&nm, &small, &om),
            "one-star": nm.local_names(&small, lat.set(one_star)),
            "o-p": nm.local_names(&small, lat.set(lockit_core::omega::o_p(&small))),
            "hom-p1-p1": fusion_morphisms(&small, p1, p1).len(),
            "p1-fully-normalized": is_fully_normalized(&small, &om, p1),
            "expanded-objects": small.expand_delta().unwrap().objects().len(),
            "normal-closure-central-involution": normal_closure(&small, [zinv]).len(),
            "normals": normal_table(&small, &om),
        }),
    );

    let full = build_locality(g.clone(), 2, &s, &DeltaSpec::AllNonidentity).unwrap();
    let fom = compute_omega(&full);
    let gr = &g;
    let m12 = g.set(ms[0].members.iter().flat_map(|a| ms[1].members.iter().flat_map(move |b| [gr.mul(a, b), gr.mul(b, a)])).collect::<Vec<_>>());
    let gamma = objects_from(&full, &nm, &[&gold["s"], &gold["p"][0], &gold["p"][1]]);
    let restricted = full.restrict_to(&gamma).unwrap();
    out.insert(
        "gl32-full",
        json!({
            "carrier": nm.names(&full.carrier_in_group().unwrap()),
            "m1m2-union-m2m1": nm.names(&m12),
            "restriction-is-small": restricted.carrier_in_group() == small.carrier_in_group(),
            "omega": omega_json(&nm, &full, &fom),
            "normals": normal_table(&full, &fom),
        }),
    );

    out.insert("o4plus2", o4plus2_values(&golden["o4plus2"]));

    for (key, group, p) in [("dihedral-demo", catalog::dihedral_12(), 2), ("delta-s", catalog::symmetric(4), 3)] {
        let nm = Named::new(group);
        let s = nm.subgroup(&golden[key]["s"]);
        let spec = if p == 2 {
            DeltaSpec::AllNonidentity
        } else {
            DeltaSpec::Explicit(vec![s.members.clone()])
        };
        let l = build_locality(nm.group.clone(), p, &s, &spec).unwrap();
        let om = compute_omega(&l);
        out.insert(
            key,
            json!({ "carrier": l.size(), "omega": omega_json(&nm, &l, &om), "normals": normal_table(&l, &om) }),
        );
    }
    json!(out)
}

fn o4plus2_values(gold: &Value) -> Value {
    let nm = Named::new(catalog::o4plus2());
    let s = nm.subgroup(&gold["s"]);
    let l = Arc::new(build_locality(nm.group.clone(), 2, &s, &DeltaSpec::AllNonidentity).unwrap());
    let om = compute_omega(&l);
    let lat = l.lattice();
    let order = nm.sorted_carrier(&l);
    let defined = |w: &[usize]| l.state_in_domain(l.state(w));
    let mut pair = None;
    'p: for &a in &order {
        for &b in &order {
            if !defined(&[a, b]) {
                pair = Some([a, b]);
                break 'p;
            }
        }
    }
    let mut triple = None;
    't: for &a in &order {
        for &b in &order {
            let Some(ab) = l.mul(a, b) else { continue };
            for &c in &order {
                if l.mul(ab, c).is_some() && !defined(&[a, b, c]) {
                    triple = Some([a, b, c]);
                    break 't;
                }
            }
        }
    }
    let label = |w: &[usize]| -> Vec<String> { w.iter().map(|&x| nm.name(l.to_group(x).unwrap())).collect() };
    let sl = l.s_elements();
    let z = l.set(sl.iter().copied().filter(|&x| sl.iter().all(|&y| l.mul(x, y) == l.mul(y, x))));
    let zid = l.sub_id(&z).unwrap();
    let normals = enumerate_partial_normals(&l).normals;
    let mut products: Vec<[usize; 3]> = Vec::new();
    for m in &normals {
        for n in &normals {
            products.push([m.len(), n.len(), product_set(&l, m, n).len()]);
        }
    }
    products.sort();
    products.dedup();
    json!({
        "order": nm.group.order(),
        "carrier": l.size(),
        "nondomain-pair": label(&pair.unwrap()),
        "warning-triple": label(&triple.unwrap()),
        "normalizer-of-center": l.normalizer_locality(zid).unwrap().size(),
        "omega": omega_json(&nm, &l, &om),
        "one-star": nm.local_names(&l, lat.set(om.star(&l, lat.bottom()))),
        "o-p": nm.local_names(&l, lat.set(lockit_core::omega::o_p(&l))),
        "normal-closure-s": normal_closure(&l, sl.iter().copied()).len(),
        "normals": normal_table(&l, &om),
        "products": products,
    })
}

/// Paths where `lib` disagrees with `gold`, for every leaf of `lib`.
pub fn mismatches(lib: &Value, gold: &Value, path: &str, out: &mut Vec<String>) {
    match lib {
        Value::Object(map) => {
            for (k, v) in map {
                mismatches(v, &gold[k.as_str()], &format!("{path}/{k}"), out);
            }
        }
        _ => {
            if lib != gold {
                out.push(format!("{path}: library {lib} golden {gold}"));
            }
        }
    }
}
