//! Finite groups stored as full multiplication tables.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::Elem;

/// Size caps for group construction and subgroup enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_enum_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 10_000,
            max_enum_order: 1_000,
        }
    }
}

/// A finite group. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    perms: Option<Vec<Perm>>,
    labels: Vec<String>,
}

/// A subgroup, identified by its member set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    pub members: ElemSet,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.to_vec()
    }
}

impl FiniteGroup {
    /// Closes `gens` under composition.
    pub fn from_permutations(degree: usize, gens: &[Perm], limits: &Limits) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator {} has degree {}, expected {degree}",
                    g.cycle_string(),
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut elems: Vec<Perm> = alloc::vec![id.clone()];
        let mut index: BTreeMap<Perm, u32> = BTreeMap::new();
        index.insert(id, 0);
        let mut parent: Vec<(u32, u32)> = alloc::vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let p = elems[i].then(g);
                let j = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= limits.max_group_order {
                            return Err(Error::Resource(format!(
                                "group order exceeds cap {}",
                                limits.max_group_order
                            )));
                        }
                        let j = elems.len() as u32;
                        index.insert(p.clone(), j);
                        elems.push(p);
                        parent.push((i as u32, k as u32));
                        j
                    }
                };
                row.push(j);
            }
            right.push(row);
            i += 1;
        }
        let n = elems.len();
        let mut mul = alloc::vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
        }
        // Elements appear in BFS order, so parents are filled before children.
        for b in 1..n {
            let (pb, k) = parent[b];
            for a in 0..n {
                let ap = mul[a * n + pb as usize] as usize;
                mul[a * n + b] = right[ap][k as usize];
            }
        }
        let mut inv = alloc::vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&x| x == 0).unwrap() as u32;
        }
        let labels = elems.iter().map(|p| p.cycle_string()).collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            perms: Some(elems),
            labels,
        })
    }

    /// Builds a group from a Cayley table with identity 0.
    pub fn from_table(table: &[Vec<Elem>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::InvalidInput("table is not square over 0..n".into()));
            }
            mul.extend(row.iter().map(|&x| x as u32));
        }
        for g in 0..n {
            if mul[g] as usize != g || mul[g * n] as usize != g {
                return Err(Error::InvalidInput("element 0 is not the identity".into()));
            }
        }
        let mut inv = alloc::vec![0u32; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a * n + b] == 0) {
                Some(b) => inv[a] = b as u32,
                None => return Err(Error::InvalidInput(format!("element {a} has no inverse"))),
            }
        }
        let g = FiniteGroup {
            order: n,
            mul,
            inv,
            perms: None,
            labels: (0..n).map(|i| format!("g{i}")).collect(),
        };
        if n <= 500 {
            if let Some((a, b, c)) = g.find_nonassociative_triple() {
                return Err(Error::InvalidInput(format!(
                    "table is not associative at ({a},{b},{c})"
                )));
            }
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::from_table(&[alloc::vec![0]]).unwrap()
    }

    pub fn find_nonassociative_triple(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as Elem
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn product(&self, word: &[Elem]) -> Elem {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn perm(&self, a: Elem) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].degree())
    }

    /// Looks up a permutation among the elements.
    pub fn find_perm(&self, p: &Perm) -> Option<Elem> {
        self.perms.as_ref()?.iter().position(|q| q == p)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.order
    }

    pub fn set(&self, it: impl IntoIterator<Item = Elem>) -> ElemSet {
        ElemSet::from_iter(self.order, it)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: self.set([0]),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: ElemSet::full(self.order),
        }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: impl IntoIterator<Item = Elem>) -> Subgroup {
        let gens: Vec<Elem> = seed.into_iter().filter(|&x| x != 0).collect();
        self.closure_of_gens(&gens)
    }

    fn closure_of_gens(&self, gens: &[Elem]) -> Subgroup {
        let mut members = self.set([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup { members }
    }

    /// Whether `set` is closed under products and contains the identity.
    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let v = set.to_vec();
        v.iter()
            .all(|&a| v.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// `{g⁻¹ x g : x ∈ P}`.
    pub fn conjugate_subgroup(&self, p: &Subgroup, g: Elem) -> Subgroup {
        Subgroup {
            members: self.conjugate_set(&p.members, g),
        }
    }

    pub fn conjugate_set(&self, set: &ElemSet, g: Elem) -> ElemSet {
        self.set(set.iter().map(|x| self.conj(x, g)))
    }

    pub fn normalizer(&self, p: &Subgroup) -> Subgroup {
        let members = self.set(
            self.elements()
                .filter(|&g| p.members.iter().all(|x| p.contains(self.conj(x, g)))),
        );
        Subgroup { members }
    }

    pub fn centralizer(&self, p: &Subgroup) -> Subgroup {
        let members = self.set(
            self.elements()
                .filter(|&g| p.members.iter().all(|x| self.mul(x, g) == self.mul(g, x))),
        );
        Subgroup { members }
    }

    /// Subgroup generated by two subgroups.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.subgroup_closure(a.members.iter().chain(b.members.iter()))
    }

    pub fn is_p_group_order(n: usize, p: usize) -> bool {
        let mut n = n;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn p_part(n: usize, p: usize) -> usize {
        let mut n = n;
        let mut q = 1;
        while n % p == 0 {
            n /= p;
            q *= p;
        }
        q
    }

    fn check_enum_cap(&self, limits: &Limits) -> Result<()> {
        if self.order > limits.max_enum_order {
            return Err(Error::Resource(format!(
                "group order {} exceeds subgroup-enumeration cap {}",
                self.order, limits.max_enum_order
            )));
        }
        Ok(())
    }

    /// Every subgroup, once, sorted by member list.
    pub fn all_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        self.check_enum_cap(limits)?;
        Ok(self.subgroups_where(|_| true, |_| true))
    }

    /// All subgroups whose elements satisfy `elem_ok` and which satisfy
    /// `sub_ok`; `sub_ok` must be inherited by subgroups.
    pub fn subgroups_where(
        &self,
        elem_ok: impl Fn(Elem) -> bool,
        sub_ok: impl Fn(&Subgroup) -> bool,
    ) -> Vec<Subgroup> {
        let candidates: Vec<Elem> = self.elements().filter(|&g| elem_ok(g)).collect();
        let mut found: BTreeMap<ElemSet, Vec<Elem>> = BTreeMap::new();
        let triv = self.trivial_subgroup();
        found.insert(triv.members.clone(), Vec::new());
        let mut queue = VecDeque::from([(triv.members, Vec::<Elem>::new())]);
        while let Some((h, gens)) = queue.pop_front() {
            let mut covered = h.clone();
            for &g in &candidates {
                if covered.contains(g) {
                    continue;
                }
                // <H, g> depends only on the coset Hg.
                for x in h.iter() {
                    covered.insert(self.mul(x, g));
                }
                let mut ng = gens.clone();
                ng.push(g);
                let k = self.closure_of_gens(&ng);
                if !k.members.iter().all(&elem_ok) || !sub_ok(&k) {
                    continue;
                }
                if !found.contains_key(&k.members) {
                    found.insert(k.members.clone(), ng.clone());
                    queue.push_back((k.members, ng));
                }
            }
        }
        found.into_keys().map(|members| Subgroup { members }).collect()
    }

    /// All p-subgroups, sorted by member list.
    pub fn p_subgroups(&self, p: usize, limits: &Limits) -> Result<Vec<Subgroup>> {
        self.check_enum_cap(limits)?;
        Ok(self.subgroups_where(
            |g| Self::is_p_group_order(self.element_order(g), p),
            |k| Self::is_p_group_order(k.order(), p),
        ))
    }

    /// The maximal p-subgroups, sorted by member list.
    pub fn sylow_p(&self, p: usize, limits: &Limits) -> Result<Vec<Subgroup>> {
        let all = self.p_subgroups(p, limits)?;
        Ok(maximal_by_inclusion(&all))
    }
}

/// Members of `family` not properly contained in another member.
pub fn maximal_by_inclusion(family: &[Subgroup]) -> Vec<Subgroup> {
    family
        .iter()
        .filter(|a| {
            !family
                .iter()
                .any(|b| b.order() > a.order() && a.is_subgroup_of(b))
        })
        .cloned()
        .collect()
}

/// Distinct subgroups in a family, sorted.
pub fn dedup_sorted(family: impl IntoIterator<Item = Subgroup>) -> Vec<Subgroup> {
    family.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s3() -> FiniteGroup {
        let gens = [
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
        ];
        FiniteGroup::from_permutations(3, &gens, &Limits::default()).unwrap()
    }

    fn d8() -> FiniteGroup {
        let gens = [
            Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(4, &[vec![1, 3]]).unwrap(),
        ];
        FiniteGroup::from_permutations(4, &gens, &Limits::default()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(d8().order(), 8);
        assert!(s3().find_nonassociative_triple().is_none());
    }

    #[test]
    fn closure_examples() {
        let g = d8();
        assert_eq!(g.subgroup_closure([]).order(), 1);
        assert_eq!(g.subgroup_closure(g.elements()).order(), 8);
        // generator 0 of the BFS is the 4-cycle
        let r = g
            .find_perm(&Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap())
            .unwrap();
        assert_eq!(g.subgroup_closure([r]).order(), 4);
    }

    #[test]
    fn sylow_and_lattice() {
        let g = s3();
        let l = Limits::default();
        let syl = g.sylow_p(2, &l).unwrap();
        assert_eq!(syl.len(), 3);
        assert!(syl.iter().all(|s| s.order() == 2));
        assert_eq!(g.all_subgroups(&l).unwrap().len(), 6);
        let c4 = FiniteGroup::from_permutations(
            4,
            &[Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap()],
            &l,
        )
        .unwrap();
        assert_eq!(c4.all_subgroups(&l).unwrap().len(), 3);
    }

    #[test]
    fn caps_are_enforced() {
        let l = Limits {
            max_group_order: 5,
            max_enum_order: 1000,
        };
        let gens = [
            Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
            Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::from_permutations(3, &gens, &l),
            Err(Error::Resource(_))
        ));
        let l = Limits {
            max_group_order: 100,
            max_enum_order: 4,
        };
        assert!(s3().all_subgroups(&l).is_err());
    }

    #[test]
    fn normalizer_and_conjugation() {
        let g = s3();
        let t = g.subgroup_closure([g.find_perm(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap()).unwrap()]);
        assert_eq!(g.normalizer(&t), t);
        assert_eq!(g.centralizer(&g.whole()).order(), 1);
        assert_eq!(g.normalizer(&g.trivial_subgroup()).order(), 6);
        for x in g.elements() {
            for y in g.elements() {
                let a = g.conjugate_subgroup(&g.conjugate_subgroup(&t, x), y);
                assert_eq!(a, g.conjugate_subgroup(&t, g.mul(x, y)));
            }
        }
    }

    #[test]
    fn from_table_rejects_nonassociative() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(&t).is_err());
    }
}
