//! Finite groups, their subgroup-conjugacy lattice, cosets, double cosets,
//! and Weyl groups.
//!
//! Groups are given by explicit multiplication tables (or permutation
//! generators, closed off on construction) over at most 24 elements, so a
//! subgroup fits in a `u32` bitmask. Everything downstream enumerates, so
//! all lattice data is stored explicitly: one canonical representative per
//! conjugacy class of subgroups (the lexicographically least element set),
//! the full member list of each class, normalizers, and a fixed conjugator
//! from every subgroup to its class representative.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 24;

/// Subset of group elements as a bitmask (element index i ↔ bit i).
pub type Mask = u32;

pub fn mask_contains(mask: Mask, elt: usize) -> bool {
    mask & (1 << elt) != 0
}

pub fn mask_elements(mask: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

pub fn mask_len(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Lexicographic order on the sorted element lists of two equal-size masks.
/// Equivalent to comparing the smallest element, then the next, and so on.
fn mask_lex_key(mask: Mask) -> Vec<usize> {
    mask_elements(mask).collect()
}

/// A finite group with explicit multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// `mul[a * order + b]` = index of a·b.
    mul: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Build from a multiplication table; validates all group axioms by
    /// exhaustive scan.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>, id: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Structure(format!(
                "group order {n} outside supported range 1..={MAX_ORDER}"
            )));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Structure("multiplication table is not square".into()));
        }
        if id >= n {
            return Err(Error::Structure("identity index out of range".into()));
        }
        let mut mul = vec![0usize; n * n];
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::Structure(format!(
                        "table entry ({a},{b}) out of range"
                    )));
                }
                mul[a * n + b] = c;
            }
        }
        // Identity.
        for a in 0..n {
            if mul[id * n + a] != a || mul[a * n + id] != a {
                return Err(Error::Structure(format!(
                    "{} is not a two-sided identity",
                    labels[id]
                )));
            }
        }
        // Associativity.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::Structure(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // Inverses.
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == id && mul[b * n + a] == id {
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::Structure(format!("{} has no inverse", labels[a])));
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            id,
            labels,
        })
    }

    /// Build the permutation group generated by the given permutations of
    /// `0..degree`. Elements are labeled `g0, g1, ...` in closure order with
    /// the identity first.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Structure("generator has wrong degree".into()));
            }
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::Structure("generator is not a permutation".into()));
                }
                seen[img] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity];
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            frontier += 1;
            for g in generators {
                // g ∘ cur
                let composed: Vec<usize> = cur.iter().map(|&x| g[x]).collect();
                if !elems.contains(&composed) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::Structure(format!(
                            "closure exceeds maximum order {MAX_ORDER}"
                        )));
                    }
                    elems.push(composed);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![vec![0usize; n]; n];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                // (a·b)(x) = a(b(x))
                let prod: Vec<usize> = (0..degree).map(|x| pa[pb[x]]).collect();
                table[a][b] = elems
                    .iter()
                    .position(|e| *e == prod)
                    .expect("closure is closed");
            }
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        FiniteGroup::from_table(labels, table, 0)
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec!["e".to_string()], vec![vec![0]], 0).unwrap()
    }

    /// Cyclic group of order n, elements `r0..r(n-1)` with r1 a generator.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("r{i}")).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(labels, table, 0).unwrap()
    }

    /// Symmetric group on `m` letters (m ≤ 4), as permutations.
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m == 1 {
            return Ok(FiniteGroup::trivial());
        }
        if m > 4 {
            return Err(Error::Structure("symmetric group too large".into()));
        }
        let transposition: Vec<usize> = {
            let mut p: Vec<usize> = (0..m).collect();
            p.swap(0, 1);
            p
        };
        let cycle: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        FiniteGroup::from_permutations(m, &[transposition, cycle])
    }

    /// Klein four-group.
    pub fn klein_four() -> Self {
        FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// a·b·a⁻¹
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn full_mask(&self) -> Mask {
        if self.order == 32 {
            u32::MAX
        } else {
            (1u32 << self.order) - 1
        }
    }

    pub fn id_mask(&self) -> Mask {
        1 << self.id
    }

    /// Conjugate a subset: a·S·a⁻¹.
    pub fn conj_mask(&self, a: usize, s: Mask) -> Mask {
        let mut out = 0;
        for x in mask_elements(s) {
            out |= 1 << self.conj(a, x);
        }
        out
    }

    pub fn is_subgroup(&self, s: Mask) -> bool {
        if !mask_contains(s, self.id) {
            return false;
        }
        for a in mask_elements(s) {
            for b in mask_elements(s) {
                if !mask_contains(s, self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest subgroup containing the given elements.
    pub fn generated_subgroup(&self, gens: Mask) -> Mask {
        let mut s = self.id_mask() | gens;
        loop {
            let mut next = s;
            for a in mask_elements(s) {
                for b in mask_elements(s) {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn normalizer(&self, s: Mask) -> Mask {
        let mut out = 0;
        for g in self.elements() {
            if self.conj_mask(g, s) == s {
                out |= 1 << g;
            }
        }
        out
    }

    pub fn centralizer(&self, s: Mask) -> Mask {
        let mut out = 0;
        for g in self.elements() {
            if mask_elements(s).all(|x| self.mul(g, x) == self.mul(x, g)) {
                out |= 1 << g;
            }
        }
        out
    }

    /// Left transversal of the subgroup `s`: coset representatives of G/s in
    /// element order, identity coset first.
    pub fn left_transversal(&self, s: Mask) -> Vec<usize> {
        let mut reps = Vec::new();
        let mut covered = 0u32;
        for g in self.elements() {
            if !mask_contains(covered, g) {
                reps.push(g);
                for h in mask_elements(s) {
                    covered |= 1 << self.mul(g, h);
                }
            }
        }
        reps
    }

    /// The standalone group on the elements of a subgroup. Returns the new
    /// group together with the map from new element indices to ambient ones.
    pub fn subgroup_group(&self, s: Mask) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(s) {
            return Err(Error::NotASubgroup(format!("mask {s:#b}")));
        }
        let embed: Vec<usize> = mask_elements(s).collect();
        let pos = |g: usize| embed.iter().position(|&x| x == g).unwrap();
        let n = embed.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| pos(self.mul(embed[a], embed[b]))).collect())
            .collect();
        let labels = embed.iter().map(|&g| self.labels[g].clone()).collect();
        let grp = FiniteGroup::from_table(labels, table, pos(self.id))?;
        Ok((grp, embed))
    }

    /// Double coset representatives for K\G/H, in element order; together
    /// the double cosets K·g·H partition G.
    pub fn double_cosets(&self, k: Mask, h: Mask) -> Result<Vec<usize>> {
        if !self.is_subgroup(k) || !self.is_subgroup(h) {
            return Err(Error::NotASubgroup("double_cosets".into()));
        }
        let mut reps = Vec::new();
        let mut covered = 0u32;
        for g in self.elements() {
            if !mask_contains(covered, g) {
                reps.push(g);
                for a in mask_elements(k) {
                    for b in mask_elements(h) {
                        covered |= 1 << self.mul(self.mul(a, g), b);
                    }
                }
            }
        }
        Ok(reps)
    }

    /// Size of the double coset K·g·H.
    pub fn double_coset_size(&self, k: Mask, g: usize, h: Mask) -> usize {
        let mut covered = 0u32;
        for a in mask_elements(k) {
            for b in mask_elements(h) {
                covered |= 1 << self.mul(self.mul(a, g), b);
            }
        }
        mask_len(covered)
    }
}

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Canonical representative: lexicographically least element set in the class.
    pub rep: Mask,
    /// All subgroups in the class, sorted by their lex key.
    pub members: Vec<Mask>,
    /// Normalizer of the representative.
    pub normalizer: Mask,
    pub order: usize,
}

/// All subgroups of a group, organized by conjugacy class.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    /// Every subgroup, sorted by (order, lex key).
    subgroups: Vec<Mask>,
    /// Class data, sorted by (order of members, lex key of representative);
    /// class 0 is the trivial subgroup, the last class is the full group.
    classes: Vec<SubgroupClass>,
    /// `class_of[i]` = class index of `subgroups[i]`.
    class_of: Vec<usize>,
    /// For each subgroup (by index): a fixed w with w·S·w⁻¹ = class rep.
    to_rep: Vec<usize>,
    /// subconj[h][k] = true iff some conjugate of rep(h) lies in rep(k).
    subconj: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    /// Enumerate all subgroups by closure-extension breadth-first search.
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let g = &*group;
        let mut all: Vec<Mask> = vec![g.id_mask()];
        let mut frontier = 0;
        while frontier < all.len() {
            let s = all[frontier];
            frontier += 1;
            for x in g.elements() {
                if !mask_contains(s, x) {
                    let bigger = g.generated_subgroup(s | (1 << x));
                    if !all.contains(&bigger) {
                        all.push(bigger);
                    }
                }
            }
        }
        all.sort_by_key(|&s| (mask_len(s), mask_lex_key(s)));

        // Conjugacy classes.
        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for i in 0..all.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members: Vec<Mask> = g
                .elements()
                .map(|x| g.conj_mask(x, all[i]))
                .collect::<Vec<_>>();
            members.sort_by_key(|&m| mask_lex_key(m));
            members.dedup();
            let rep = members[0];
            let cls_idx = classes.len();
            for m in &members {
                let j = all.iter().position(|s| s == m).expect("conjugate present");
                class_of[j] = cls_idx;
            }
            classes.push(SubgroupClass {
                rep,
                normalizer: g.normalizer(rep),
                order: mask_len(rep),
                members,
            });
        }

        // Fixed conjugator to the representative, first in element order.
        let mut to_rep = vec![0usize; all.len()];
        for (i, &s) in all.iter().enumerate() {
            let rep = classes[class_of[i]].rep;
            to_rep[i] = g
                .elements()
                .find(|&w| g.conj_mask(w, s) == rep)
                .expect("conjugate to representative");
        }

        // Subconjugacy between classes.
        let nc = classes.len();
        let mut subconj = vec![vec![false; nc]; nc];
        for (hc, h) in classes.iter().enumerate() {
            for (kc, k) in classes.iter().enumerate() {
                subconj[hc][kc] = h.members.iter().any(|&m| m & k.rep == m);
            }
        }

        SubgroupLattice {
            group,
            subgroups: all,
            classes,
            class_of,
            to_rep,
            subconj,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Mask] {
        &self.subgroups
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Index of the trivial class.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the class of the full group.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn subgroup_index(&self, s: Mask) -> Result<usize> {
        self.subgroups
            .iter()
            .position(|&t| t == s)
            .ok_or_else(|| Error::NotASubgroup(format!("mask {s:#b}")))
    }

    pub fn class_of_mask(&self, s: Mask) -> Result<usize> {
        Ok(self.class_of[self.subgroup_index(s)?])
    }

    /// Fixed conjugator w with w·S·w⁻¹ = rep(class of S).
    pub fn conjugator_to_rep(&self, s: Mask) -> Result<usize> {
        Ok(self.to_rep[self.subgroup_index(s)?])
    }

    pub fn rep(&self, class: usize) -> Mask {
        self.classes[class].rep
    }

    /// True iff some conjugate of rep(h) is contained in rep(k).
    pub fn subconjugate(&self, h: usize, k: usize) -> bool {
        self.subconj[h][k]
    }

    /// Stable display name for a class: braces around the element labels of
    /// the canonical representative.
    pub fn class_name(&self, class: usize) -> String {
        let g = &*self.group;
        let names: Vec<&str> = mask_elements(self.classes[class].rep)
            .map(|i| g.label(i))
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Weyl group W(H) = N(H)/H at the representative of the class.
    pub fn weyl_group(&self, class: usize) -> WeylGroup {
        let g = &*self.group;
        let h = self.classes[class].rep;
        let n = self.classes[class].normalizer;
        // Coset representatives of H in N(H).
        let mut reps: Vec<usize> = Vec::new();
        let mut covered = 0u32;
        for x in mask_elements(n) {
            if !mask_contains(covered, x) {
                reps.push(x);
                for y in mask_elements(h) {
                    covered |= 1 << g.mul(x, y);
                }
            }
        }
        let m = reps.len();
        let coset_of = |x: usize| -> usize {
            reps.iter()
                .position(|&r| {
                    // x ∈ r·H  ⟺  r⁻¹x ∈ H
                    mask_contains(h, g.mul(g.inv(r), x))
                })
                .expect("normalizer element lies in some coset")
        };
        let table = (0..m)
            .map(|a| (0..m).map(|b| coset_of(g.mul(reps[a], reps[b]))).collect())
            .collect();
        let labels = reps.iter().map(|&r| format!("{}H", g.label(r))).collect();
        let quotient =
            FiniteGroup::from_table(labels, table, coset_of(g.id())).expect("coset multiplication");
        WeylGroup {
            quotient,
            coset_reps: reps,
            subgroup: h,
        }
    }
}

/// The Weyl group N(H)/H of a subgroup class representative, with coset
/// representatives retained so it can act on Tambara levels.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub quotient: FiniteGroup,
    /// Ambient representatives, aligned with `quotient` element indices.
    pub coset_reps: Vec<usize>,
    pub subgroup: Mask,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.quotient.order()
    }
}
