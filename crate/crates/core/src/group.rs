//! Enumerated finite groups and the arithmetic trait the order calculus runs on.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::element::GroupElement;
use crate::error::GroupError;

/// Group arithmetic over some element handle.
///
/// The order calculus is written against this trait so it can run on the
/// index handles of an enumerated [`FiniteGroup`].
pub trait GroupArith {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    /// Least `k >= 1` with `x^k = 1`.
    fn order(&self, x: &Self::Elem) -> u64 {
        let mut k = 1;
        let mut y = x.clone();
        while !self.is_identity(&y) {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    fn pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Power with a wide exponent, reduced modulo the order first.
    fn pow_wide(&self, x: &Self::Elem, k: i128) -> Self::Elem {
        let o = self.order(x) as i128;
        self.pow(x, k.rem_euclid(o) as i64)
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let xi = self.inv(x);
        let yi = self.inv(y);
        self.mul(&self.mul(&xi, &yi), &self.mul(x, y))
    }

    /// `x^y = y^-1 x y`.
    fn conjugate(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(y), x), y)
    }

    fn commute(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// Smallest `k >= 0` with `base^k = x`, if `x` lies in `<base>`.
    fn discrete_log(&self, base: &Self::Elem, x: &Self::Elem) -> Option<u64> {
        let mut y = self.identity();
        let mut k = 0;
        loop {
            if y == *x {
                return Some(k);
            }
            y = self.mul(&y, base);
            k += 1;
            if self.is_identity(&y) {
                return None;
            }
        }
    }
}

/// Index of an element in a [`FiniteGroup`]'s enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Subset of an enumerated group, stored as a bitset over element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    ambient: usize,
    bits: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(ambient: usize) -> Self {
        ElementSet { ambient, bits: alloc::vec![0; ambient.div_ceil(64)], len: 0 }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::empty(ambient);
        for i in 0..ambient {
            s.insert(ElemId(i as u32));
        }
        s
    }

    /// Returns true if `x` was newly inserted.
    pub fn insert(&mut self, x: ElemId) -> bool {
        let (w, b) = (x.index() / 64, x.index() % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, x: ElemId) -> bool {
        x.index() < self.ambient && self.bits[x.index() / 64] & (1 << (x.index() % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Order of the ambient group this set is drawn from.
    pub fn ambient_order(&self) -> usize {
        self.ambient
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.ambient).map(|i| ElemId(i as u32)).filter(move |&x| self.contains(x))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenerateOptions {
    /// Maximum number of elements the closure may reach.
    pub cap: usize,
    /// Largest order for which a full multiplication table is stored.
    pub table_limit: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { cap: 20_000, table_limit: 2048 }
    }
}

/// A finite group with its complete element table.
///
/// Elements are enumerated breadth-first from the identity, multiplying on the
/// right by generators in list order, so indices are stable across runs.
pub struct FiniteGroup {
    generators: Vec<GroupElement>,
    generator_ids: Vec<ElemId>,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, ElemId>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    power_offsets: Vec<u32>,
    powers: Vec<u32>,
    series: Vec<ElementSet>,
    center: ElementSet,
    nilpotency_class: Option<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.size())
            .field("generators", &self.generators)
            .field("nilpotency_class", &self.nilpotency_class)
            .finish()
    }
}

/// Closure of `generators` under multiplication; see [`FiniteGroup`].
pub fn generate(generators: &[GroupElement]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::generate(generators, GenerateOptions::default())
}

impl FiniteGroup {
    pub fn generate(generators: &[GroupElement], options: GenerateOptions) -> Result<Self, GroupError> {
        let first = generators.first().ok_or(GroupError::NoGenerators)?;
        for g in generators {
            if !first.compatible(g) {
                return Err(GroupError::RepresentationMismatch { left: first.kind(), right: g.kind() });
            }
        }
        let identity = first.identity_like();
        let mut elements = alloc::vec![identity.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(identity, ElemId(0));
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = x.multiply(g)?;
                if !lookup.contains_key(&y) {
                    if elements.len() >= options.cap {
                        return Err(GroupError::TooLarge { cap: options.cap });
                    }
                    lookup.insert(y.clone(), ElemId(elements.len() as u32));
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let table = (n <= options.table_limit).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for x in &elements {
                for y in &elements {
                    let z = x.multiply(y).expect("closed set");
                    t.push(lookup[&z].0);
                }
            }
            t
        });
        let inverses = elements.iter().map(|x| lookup[&x.inverse()].0).collect();
        let generator_ids = generators.iter().map(|g| lookup[g]).collect();

        let mut group = FiniteGroup {
            generators: generators.to_vec(),
            generator_ids,
            elements,
            lookup,
            table,
            inverses,
            orders: Vec::new(),
            power_offsets: Vec::new(),
            powers: Vec::new(),
            series: Vec::new(),
            center: ElementSet::empty(n),
            nilpotency_class: None,
        };
        group.fill_power_cache();
        group.center = group.compute_center();
        let (series, class) = group.compute_lower_central_series();
        group.series = series;
        group.nilpotency_class = class;
        Ok(group)
    }

    fn fill_power_cache(&mut self) {
        let n = self.elements.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut powers = Vec::new();
        let mut orders = Vec::with_capacity(n);
        for i in 0..n {
            offsets.push(powers.len() as u32);
            let x = ElemId(i as u32);
            let mut y = ElemId(0);
            loop {
                powers.push(y.0);
                y = self.mul_raw(y, x);
                if y.0 == 0 {
                    break;
                }
            }
            orders.push(powers.len() as u32 - offsets[i]);
        }
        offsets.push(powers.len() as u32);
        self.power_offsets = offsets;
        self.powers = powers;
        self.orders = orders;
    }

    fn mul_raw(&self, x: ElemId, y: ElemId) -> ElemId {
        match &self.table {
            Some(t) => ElemId(t[x.index() * self.elements.len() + y.index()]),
            None => {
                let z = self.elements[x.index()].multiply(&self.elements[y.index()]).expect("closed set");
                self.lookup[&z]
            }
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.generator_ids
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn element(&self, id: ElemId) -> &GroupElement {
        &self.elements[id.index()]
    }

    pub fn id_at(&self, index: usize) -> Result<ElemId, GroupError> {
        if index < self.elements.len() {
            Ok(ElemId(index as u32))
        } else {
            Err(GroupError::IndexOutOfRange(index))
        }
    }

    pub fn id_of(&self, x: &GroupElement) -> Result<ElemId, GroupError> {
        self.lookup.get(x).copied().ok_or(GroupError::NotMember)
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Powers `1, x, x^2, ..., x^(o(x)-1)`.
    pub fn cyclic_subgroup(&self, x: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        let (lo, hi) = (self.power_offsets[x.index()], self.power_offsets[x.index() + 1]);
        self.powers[lo as usize..hi as usize].iter().map(|&i| ElemId(i))
    }

    /// Largest element order.
    pub fn exponent_bound(&self) -> u64 {
        self.orders.iter().copied().max().unwrap_or(1) as u64
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        self.nilpotency_class
    }

    pub fn is_abelian(&self) -> bool {
        self.center.len() == self.size()
    }

    pub fn center(&self) -> &ElementSet {
        &self.center
    }

    /// `gamma_1 = G, gamma_2 = [G, G], ...`, strictly decreasing; the last term
    /// is trivial exactly when the group is nilpotent.
    pub fn lower_central_series(&self) -> &[ElementSet] {
        &self.series
    }

    /// Commutator subgroup `G'` (the group itself when trivial).
    pub fn derived_subgroup(&self) -> &ElementSet {
        self.series.get(1).unwrap_or(&self.series[0])
    }

    pub fn centralizer(&self, g: ElemId) -> Result<ElementSet, GroupError> {
        self.id_at(g.index())?;
        let mut out = ElementSet::empty(self.size());
        for x in self.ids() {
            if self.commute(&x, &g) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Centralizer of an arbitrary element, which must belong to the group.
    pub fn centralizer_of(&self, g: &GroupElement) -> Result<ElementSet, GroupError> {
        self.centralizer(self.id_of(g)?)
    }

    fn compute_center(&self) -> ElementSet {
        let mut out = ElementSet::empty(self.size());
        for x in self.ids() {
            if self.generator_ids.iter().all(|g| self.commute(&x, g)) {
                out.insert(x);
            }
        }
        out
    }

    /// Subgroup generated by `seeds`.
    pub fn subgroup_closure(&self, seeds: &[ElemId]) -> ElementSet {
        let mut set = ElementSet::empty(self.size());
        let mut queue = alloc::vec![ElemId(0)];
        set.insert(ElemId(0));
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for s in seeds {
                let y = self.mul_raw(x, *s);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Normal closure of `seeds`; also returns a generating list for it.
    fn normal_closure(&self, seeds: Vec<ElemId>) -> (ElementSet, Vec<ElemId>) {
        let mut gens: Vec<ElemId> = Vec::new();
        for s in seeds {
            if s.0 != 0 && !gens.contains(&s) {
                gens.push(s);
            }
        }
        loop {
            let h = self.subgroup_closure(&gens);
            let missing = gens.iter().find_map(|t| {
                self.generator_ids.iter().map(|x| self.conjugate(t, x)).find(|c| !h.contains(*c))
            });
            match missing {
                Some(c) => gens.push(c),
                None => return (h, gens),
            }
        }
    }

    /// `gamma_{i+1}` is the normal closure of `[t, x]` over normal generators `t`
    /// of `gamma_i` and generators `x` of the group.
    fn compute_lower_central_series(&self) -> (Vec<ElementSet>, Option<usize>) {
        let mut series = alloc::vec![ElementSet::full(self.size())];
        let mut normal_gens = self.generator_ids.clone();
        loop {
            let current = series.last().expect("nonempty");
            if current.len() == 1 {
                return (series.clone(), Some(series.len() - 1));
            }
            let seeds = normal_gens
                .iter()
                .flat_map(|t| self.generator_ids.iter().map(move |x| (t, x)))
                .map(|(t, x)| self.commutator(t, x))
                .collect();
            let (next, gens) = self.normal_closure(seeds);
            if next.len() == current.len() {
                return (series, None);
            }
            series.push(next);
            normal_gens = gens;
        }
    }
}

impl GroupArith for FiniteGroup {
    type Elem = ElemId;

    fn identity(&self) -> ElemId {
        ElemId(0)
    }

    fn mul(&self, x: &ElemId, y: &ElemId) -> ElemId {
        self.mul_raw(*x, *y)
    }

    fn inv(&self, x: &ElemId) -> ElemId {
        ElemId(self.inverses[x.index()])
    }

    fn is_identity(&self, x: &ElemId) -> bool {
        x.0 == 0
    }

    fn order(&self, x: &ElemId) -> u64 {
        self.orders[x.index()] as u64
    }

    fn pow(&self, x: &ElemId, k: i64) -> ElemId {
        let o = self.orders[x.index()] as i64;
        let r = k.rem_euclid(o) as usize;
        ElemId(self.powers[self.power_offsets[x.index()] as usize + r])
    }

    fn discrete_log(&self, base: &ElemId, x: &ElemId) -> Option<u64> {
        self.cyclic_subgroup(*base).position(|y| y == *x).map(|k| k as u64)
    }
}

/// Arithmetic directly on elements of one representation, without
/// enumerating the group they generate.
///
/// All operands must match the template's representation; mixing kinds panics.
#[derive(Debug, Clone)]
pub struct Ambient {
    identity: GroupElement,
}

impl Ambient {
    pub fn like(template: &GroupElement) -> Self {
        Ambient { identity: template.identity_like() }
    }
}

impl GroupArith for Ambient {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        self.identity.clone()
    }

    fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        x.multiply(y).expect("operands share a representation")
    }

    fn inv(&self, x: &GroupElement) -> GroupElement {
        x.inverse()
    }

    fn is_identity(&self, x: &GroupElement) -> bool {
        x.is_identity()
    }

    fn order(&self, x: &GroupElement) -> u64 {
        x.order()
    }
}
