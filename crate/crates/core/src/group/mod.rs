//! Enumeration of finite matrix groups and the class data built on top.
//!
//! [`FiniteGroup::close`] runs a breadth-first closure from the identity under
//! right multiplication by the generators. Every element is stored together
//! with its BFS parent, so products are evaluated by walking the right
//! multiplication table along the second factor's word. Groups whose
//! generators are monomial with root-of-unity scalars are packed as a
//! permutation plus exponent vector, which keeps the closure purely integral.

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

mod element;

pub use element::GroupElement;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_LIMIT: usize = 20_000;

/// Full multiplication tables are cached up to this order.
const CAYLEY_TABLE_MAX: usize = 2048;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, PartialEq, Eq, Hash)]
struct MonoKey {
    perm: Box<[u32]>,
    exps: Box<[u32]>,
}

impl MonoKey {
    fn mul(&self, other: &MonoKey, modulus: u32) -> MonoKey {
        let perm = self.perm.iter().map(|&i| other.perm[i as usize]).collect();
        let exps = self
            .perm
            .iter()
            .zip(self.exps.iter())
            .map(|(&i, &e)| (e + other.exps[i as usize]) % modulus)
            .collect();
        MonoKey { perm, exps }
    }
}

/// Dense matrix whose hash is taken over entries lifted to a fixed conductor.
#[derive(Clone)]
struct DenseKey {
    matrix: Matrix,
    conductor: u32,
}

impl PartialEq for DenseKey {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for DenseKey {}

impl Hash for DenseKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.matrix.entries() {
            v.lift(self.conductor).coeffs().hash(state);
        }
    }
}

enum Storage {
    Mono {
        modulus: u32,
        roots: Vec<Cyclotomic>,
        elements: Vec<MonoKey>,
        index: HashMap<MonoKey, u32>,
    },
    Dense {
        conductor: u32,
        elements: Vec<DenseKey>,
        index: HashMap<DenseKey, u32>,
    },
}

/// A fully enumerated finite group of invertible matrices.
pub struct FiniteGroup {
    id: u64,
    degree: usize,
    storage: Storage,
    ngens: usize,
    /// `right[x * ngens + s]` is the index of `x · g_s`.
    right: Vec<u32>,
    /// BFS word of each element in generator indices.
    words: Vec<Box<[u16]>>,
    cayley: Option<Vec<u32>>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("id", &self.id)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("classes", &self.classes.len())
            .finish()
    }
}

trait Closable: Clone + Eq + Hash {
    fn op(&self, other: &Self, ctx: u32) -> Self;
}

impl Closable for MonoKey {
    fn op(&self, other: &Self, modulus: u32) -> Self {
        self.mul(other, modulus)
    }
}

impl Closable for DenseKey {
    fn op(&self, other: &Self, _: u32) -> Self {
        DenseKey {
            matrix: self.matrix.mul(&other.matrix),
            conductor: self.conductor,
        }
    }
}

struct Closure<T> {
    elements: Vec<T>,
    index: HashMap<T, u32>,
    right: Vec<u32>,
    words: Vec<Box<[u16]>>,
}

fn bfs_closure<T: Closable>(identity: T, gens: &[T], ctx: u32, limit: usize) -> Result<Closure<T>> {
    let ngens = gens.len();
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0u32);
    let mut words: Vec<Box<[u16]>> = vec![Box::new([])];
    let mut right = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = elements[next].op(g, ctx);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    let i = elements.len() as u32;
                    if elements.len() >= limit {
                        return Err(Error::GroupTooLarge { limit });
                    }
                    let mut w = words[next].to_vec();
                    w.push(s as u16);
                    words.push(w.into_boxed_slice());
                    index.insert(y.clone(), i);
                    elements.push(y);
                    i
                }
            };
            right.push(idx);
        }
        next += 1;
    }
    debug_assert_eq!(right.len(), elements.len() * ngens);
    Ok(Closure {
        elements,
        index,
        right,
        words,
    })
}

fn root_modulus(conductor: u32) -> u32 {
    if conductor.is_multiple_of(2) {
        conductor
    } else {
        2 * conductor
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `generators`.
    pub fn close(generators: &[GroupElement], limit: usize) -> Result<FiniteGroup> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidInput("at least one generator is required".into()));
        };
        if limit == 0 {
            return Err(Error::InvalidInput("closure limit must be positive".into()));
        }
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator degrees differ: {} vs {}",
                    degree,
                    g.degree()
                )));
            }
            g.validate()?;
        }
        let conductor = generators
            .iter()
            .fold(1u32, |acc, g| acc.lcm(&g.conductor()));
        let ngens = generators.len();

        let storage_and_closure = match Self::pack_monomial(generators, conductor) {
            Some((modulus, roots, keys)) => {
                let identity = MonoKey {
                    perm: (0..degree as u32).collect(),
                    exps: vec![0; degree].into_boxed_slice(),
                };
                let c = bfs_closure(identity, &keys, modulus, limit)?;
                (
                    Storage::Mono {
                        modulus,
                        roots,
                        elements: c.elements,
                        index: c.index,
                    },
                    c.right,
                    c.words,
                )
            }
            None => {
                let keys: Vec<DenseKey> = generators
                    .iter()
                    .map(|g| DenseKey {
                        matrix: g.to_matrix(),
                        conductor,
                    })
                    .collect();
                let identity = DenseKey {
                    matrix: Matrix::identity(degree),
                    conductor,
                };
                let c = bfs_closure(identity, &keys, 0, limit)?;
                (
                    Storage::Dense {
                        conductor,
                        elements: c.elements,
                        index: c.index,
                    },
                    c.right,
                    c.words,
                )
            }
        };
        let (storage, right, words) = storage_and_closure;
        let mut group = FiniteGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            degree,
            storage,
            ngens,
            right,
            words,
            cayley: None,
            inverse: Vec::new(),
            orders: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.build_cayley();
        group.build_orders_and_inverses();
        group.build_classes();
        Ok(group)
    }

    /// Monomial generators whose scalars are all roots of unity pack into
    /// (permutation, exponent) pairs over a common modulus.
    fn pack_monomial(
        generators: &[GroupElement],
        conductor: u32,
    ) -> Option<(u32, Vec<Cyclotomic>, Vec<MonoKey>)> {
        if generators.iter().any(|g| !g.is_monomial()) {
            return None;
        }
        let modulus = root_modulus(conductor);
        let roots: Vec<Cyclotomic> = (0..modulus as i64)
            .map(|k| Cyclotomic::root_of_unity(modulus, k))
            .collect();
        let mut keys = Vec::new();
        for g in generators {
            let (perm, scalars) = match g {
                GroupElement::Monomial { perm, scalars } => (perm, scalars.clone()),
                GroupElement::Perm(perm) => (perm, vec![Cyclotomic::one(); perm.len()]),
                GroupElement::Dense(_) => unreachable!(),
            };
            let mut exps = Vec::with_capacity(perm.len());
            for s in &scalars {
                exps.push(roots.iter().position(|r| r == s)? as u32);
            }
            keys.push(MonoKey {
                perm: perm.iter().map(|&p| p as u32).collect(),
                exps: exps.into_boxed_slice(),
            });
        }
        Some((modulus, roots, keys))
    }

    fn build_cayley(&mut self) {
        let n = self.order();
        if n > CAYLEY_TABLE_MAX {
            return;
        }
        // table[a][b] = right[table[a][parent(b)]][last letter of b]
        let mut table = vec![0u32; n * n];
        let mut parent = vec![0u32; n];
        for x in 0..n {
            for s in 0..self.ngens {
                let y = self.right[x * self.ngens + s] as usize;
                if self.words[y].len() == self.words[x].len() + 1
                    && *self.words[y].last().unwrap() as usize == s
                    && self.words[y][..self.words[x].len()] == *self.words[x]
                {
                    parent[y] = x as u32;
                }
            }
        }
        let mut by_depth: Vec<usize> = (0..n).collect();
        by_depth.sort_by_key(|&b| self.words[b].len());
        for a in 0..n {
            table[a * n] = a as u32;
        }
        for &b in by_depth.iter().skip(1) {
            let p = parent[b] as usize;
            let s = *self.words[b].last().unwrap() as usize;
            for a in 0..n {
                let ap = table[a * n + p] as usize;
                table[a * n + b] = self.right[ap * self.ngens + s];
            }
        }
        self.cayley = Some(table);
    }

    fn build_orders_and_inverses(&mut self) {
        let n = self.order();
        let mut inverse = vec![u32::MAX; n];
        let mut orders = vec![0u64; n];
        for x in 0..n {
            if orders[x] != 0 {
                continue;
            }
            let mut prev = 0usize;
            let mut cur = x;
            let mut k = 1u64;
            if x == 0 {
                orders[0] = 1;
                inverse[0] = 0;
                continue;
            }
            while cur != 0 {
                prev = cur;
                cur = self.mul(cur, x);
                k += 1;
            }
            // x^k = e and prev = x^{k-1}.
            let order = k;
            orders[x] = order;
            inverse[x] = prev as u32;
            orders[prev] = order;
            inverse[prev] = x as u32;
        }
        self.inverse = inverse;
        self.orders = orders;
    }

    fn build_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        let gens: Vec<usize> = (0..self.ngens).map(|s| self.generator(s)).collect();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            let mut orbit = vec![x as u32];
            class_of[x] = c;
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i] as usize;
                for &g in &gens {
                    let z = self.mul(self.mul(self.inv(g), y), g);
                    if class_of[z] == u32::MAX {
                        class_of[z] = c;
                        orbit.push(z as u32);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Unique id used to check that characters and representations refer to
    /// the same group object.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        match &self.storage {
            Storage::Mono { elements, .. } => elements.len(),
            Storage::Dense { elements, .. } => elements.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Element index of the `s`-th generator.
    pub fn generator(&self, s: usize) -> usize {
        self.right[s] as usize
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.ngens).map(|s| self.generator(s)).collect()
    }

    /// Word of element `x` in generator indices (BFS tree path from the identity).
    pub fn word(&self, x: usize) -> &[u16] {
        &self.words[x]
    }

    /// Index of `x · s_gen`.
    pub fn mul_generator(&self, x: usize, s: usize) -> usize {
        self.right[x * self.ngens + s] as usize
    }

    /// Index of the product `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.cayley {
            return t[a * self.order() + b] as usize;
        }
        self.words[b]
            .iter()
            .fold(a, |acc, &s| self.right[acc * self.ngens + s as usize] as usize)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    /// Materializes element `i` as a matrix group element.
    pub fn element(&self, i: usize) -> GroupElement {
        match &self.storage {
            Storage::Mono {
                roots, elements, ..
            } => {
                let k = &elements[i];
                let perm: Vec<usize> = k.perm.iter().map(|&p| p as usize).collect();
                if k.exps.iter().all(|&e| e == 0) {
                    GroupElement::Perm(perm)
                } else {
                    GroupElement::Monomial {
                        perm,
                        scalars: k.exps.iter().map(|&e| roots[e as usize].clone()).collect(),
                    }
                }
            }
            Storage::Dense { elements, .. } => GroupElement::Dense(elements[i].matrix.clone()),
        }
    }

    /// Index of a group element, if it belongs to the group.
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        match &self.storage {
            Storage::Mono { roots, index, .. } => {
                let scalars = g.scalars()?;
                let mut exps = Vec::with_capacity(scalars.len());
                for s in &scalars {
                    exps.push(roots.iter().position(|r| r == s)? as u32);
                }
                let perm = match g {
                    GroupElement::Monomial { perm, .. } | GroupElement::Perm(perm) => perm,
                    GroupElement::Dense(_) => unreachable!(),
                };
                let key = MonoKey {
                    perm: perm.iter().map(|&p| p as u32).collect(),
                    exps: exps.into_boxed_slice(),
                };
                index.get(&key).map(|&i| i as usize)
            }
            Storage::Dense {
                conductor, index, ..
            } => {
                let key = DenseKey {
                    matrix: g.to_matrix(),
                    conductor: *conductor,
                };
                index.get(&key).map(|&i| i as usize)
            }
        }
    }

    /// Conductor of the field holding every matrix entry.
    pub fn conductor(&self) -> u32 {
        match &self.storage {
            Storage::Mono { modulus, .. } => *modulus,
            Storage::Dense { conductor, .. } => *conductor,
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.storage, Storage::Mono { .. })
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Conjugacy classes as sorted element-index lists; class 0 is the identity.
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    /// Smallest element index in class `c`.
    pub fn class_representative(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(self.inv(self.class_representative(c)))
    }

    /// Class of `g^k` as a function of the class of `g`.
    pub fn power_classes(&self, k: i64) -> Vec<usize> {
        (0..self.num_classes())
            .map(|c| self.class_of(self.pow(self.class_representative(c), k)))
            .collect()
    }

    /// Order of elements in class `c`.
    pub fn class_order(&self, c: usize) -> u64 {
        self.orders[self.class_representative(c)]
    }

    /// Histogram `order ↦ number of elements`.
    pub fn element_orders(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for &o in &self.orders {
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        self.num_classes() == self.order()
    }

    /// Whether a Sylow `p`-subgroup is cyclic, i.e. some element has order
    /// equal to the full `p`-part of `|G|`.
    pub fn sylow_cyclic(&self, p: u64) -> Result<bool> {
        let order = self.order() as u64;
        if !is_prime(p) || !order.is_multiple_of(p) {
            return Err(Error::InvalidPrime {
                p,
                order: self.order(),
            });
        }
        let mut part = 1u64;
        let mut rest = order;
        while rest.is_multiple_of(p) {
            part *= p;
            rest /= p;
        }
        Ok(self.orders.contains(&part))
    }

    /// Element indices of the commutator subgroup, computed as the normal
    /// closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let gens = self.generators();
        let mut normal_gens: Vec<usize> = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 && !normal_gens.contains(&c) {
                    normal_gens.push(c);
                }
            }
        }
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elems = vec![0usize];
        loop {
            let mut i = 0;
            while i < elems.len() {
                for &c in &normal_gens {
                    let y = self.mul(elems[i], c);
                    if !member[y] {
                        member[y] = true;
                        elems.push(y);
                    }
                }
                i += 1;
            }
            // The subgroup is normal once it contains every generator conjugate.
            let mut added = false;
            for idx in 0..normal_gens.len() {
                let c = normal_gens[idx];
                for &s in &gens {
                    let y = self.mul(self.mul(self.inv(s), c), s);
                    if !member[y] && !normal_gens.contains(&y) {
                        normal_gens.push(y);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        elems.sort_unstable();
        elems
    }

    /// `|G / [G,G]|`.
    pub fn abelianization_order(&self) -> usize {
        self.order() / self.derived_subgroup().len()
    }

    /// Prime divisors of the group order, ascending.
    pub fn prime_divisors(&self) -> Vec<u64> {
        prime_divisors(self.order() as u64)
    }

    /// Checks `mult(inv(g), g) = e` for every element.
    pub fn check_inverses(&self) -> bool {
        (0..self.order()).all(|g| self.mul(self.inv(g), g) == 0)
    }

    /// Elements of the conjugacy class of `x`, via the stored partition.
    pub fn class_elements(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.classes[c].iter().map(|&i| i as usize)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
