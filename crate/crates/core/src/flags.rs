//! Flags of edges, their completion relations, the pairing with dlog
//! monomials, and the quasi-classical contravariant form.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::arrangement::{permutation_sign, permutations, EdgeId, IntersectionLattice, WeightedArrangement};
use crate::exactfield::Field;
use crate::linalg::Matrix;

/// `L^0 ⊃ L^1 ⊃ … ⊃ L^p` with `codim L^i = i`; `edges[0]` is the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flag {
    pub edges: Vec<EdgeId>,
}

impl Flag {
    pub fn degree(&self) -> usize {
        self.edges.len() - 1
    }
}

/// All flags of degree `p`, ordered lexicographically by edge index.
pub fn enumerate_flags(lattice: &IntersectionLattice, p: usize) -> Vec<Flag> {
    let mut out = vec![vec![lattice.ambient()]];
    for c in 1..=p {
        let mut next = Vec::new();
        for f in &out {
            let last = *f.last().unwrap();
            for e in lattice.ids(c) {
                if lattice.contains(last, e) {
                    let mut g = f.clone();
                    g.push(e);
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|edges| Flag { edges }).collect()
}

/// `F(H_1, …, H_p) = (H_1 ⊃ H_1∩H_2 ⊃ …)`, when every partial intersection
/// is nonempty and drops codimension by one.
pub fn flag_of_tuple(lattice: &IntersectionLattice, hyperplanes: &[usize]) -> Option<Flag> {
    let mut edges = vec![lattice.ambient()];
    let mut cur = lattice.ambient();
    for &h in hyperplanes {
        if lattice.edge(cur).defining_set.binary_search(&h).is_ok() {
            return None;
        }
        cur = lattice.meet(cur, h)?;
        edges.push(cur);
    }
    Some(Flag { edges })
}

/// `Σ_{F ⊃ F̂} F = 0` for one flag with a gap at position `gap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub gap: usize,
    /// Indices into the raw flag list; every coefficient is `+1`.
    pub support: Vec<usize>,
}

/// Relations of degree `p`, one per gapped flag with at least one completion.
/// Gaps are interior: `1 ≤ gap ≤ p - 1`.
pub fn flag_relations(lattice: &IntersectionLattice, p: usize) -> Vec<Relation> {
    relations_for(&enumerate_flags(lattice, p), p)
}

fn relations_for(flags: &[Flag], p: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    for gap in 1..p {
        let mut groups: BTreeMap<Vec<EdgeId>, Vec<usize>> = BTreeMap::new();
        for (k, f) in flags.iter().enumerate() {
            let mut hat = f.edges.clone();
            hat.remove(gap);
            groups.entry(hat).or_default().push(k);
        }
        out.extend(groups.into_values().map(|support| Relation { gap, support }));
    }
    out
}

/// Functional on raw flags with integer values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagFunctional {
    pub values: Vec<i64>,
}

impl FlagFunctional {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn pair(&self, r: &Relation) -> i64 {
        r.support.iter().map(|&k| self.values[k]).sum()
    }

    pub fn to_field<F: Field>(&self) -> Vec<F> {
        self.values.iter().map(|&v| F::from_i64(v)).collect()
    }
}

/// Raw flags of one degree together with their relations.
#[derive(Clone, Debug)]
pub struct FlagSpace {
    pub p: usize,
    pub raw_flags: Vec<Flag>,
    pub relations: Vec<Relation>,
    index: HashMap<Flag, usize>,
}

impl FlagSpace {
    pub fn new(lattice: &IntersectionLattice, p: usize) -> Self {
        let raw_flags = enumerate_flags(lattice, p);
        let relations = relations_for(&raw_flags, p);
        let index = raw_flags.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        FlagSpace { p, raw_flags, relations, index }
    }

    pub fn len(&self) -> usize {
        self.raw_flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw_flags.is_empty()
    }

    pub fn index_of(&self, f: &Flag) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Relations as rows of a dense matrix over the raw flags.
    pub fn relation_matrix<F: Field>(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.relations.len(), self.len());
        for (i, r) in self.relations.iter().enumerate() {
            for &k in &r.support {
                m[(i, k)] = F::one();
            }
        }
        m
    }

    /// Dimension of the quotient of the free span of flags by the relations.
    pub fn quotient_dim(&self) -> usize {
        self.len() - self.relation_matrix::<crate::exactfield::Rational>().rank()
    }

    pub fn annihilates_relations(&self, f: &FlagFunctional) -> bool {
        self.relations.iter().all(|r| f.pair(r) == 0)
    }

    /// `φ(H_1, …, H_p) = Σ_σ sgn(σ) δ_{F(H_σ(1), …, H_σ(p))}`, skipping orderings
    /// that do not produce a flag.
    pub fn phi(&self, lattice: &IntersectionLattice, tuple: &[usize]) -> FlagFunctional {
        assert_eq!(tuple.len(), self.p, "tuple length must equal the flag degree");
        let mut values = vec![0; self.len()];
        for sigma in permutations(self.p) {
            let ordered: Vec<usize> = sigma.iter().map(|&s| tuple[s]).collect();
            if let Some(f) = flag_of_tuple(lattice, &ordered) {
                values[self.index[&f]] += permutation_sign(&sigma);
            }
        }
        FlagFunctional { values }
    }

    /// Gram matrix of the contravariant form over the raw flags.
    pub fn contravariant_gram<F: Field>(&self, arr: &WeightedArrangement<F>, lattice: &IntersectionLattice) -> Matrix<F> {
        let n = self.len();
        let mut g = Matrix::<F>::zeros(n, n);
        let adj = adjacent_tuples(lattice, arr.num_forms(), self.p);
        for (set, hits) in &adj {
            let w = set.iter().fold(F::one(), |acc, &h| acc * arr.weight(h).clone());
            for (f, sf) in hits {
                for (g2, sg) in hits {
                    let (i, j) = (self.index[f], self.index[g2]);
                    let term = w.clone() * F::from_i64(sf * sg);
                    g[(i, j)] = g[(i, j)].clone() + term;
                }
            }
        }
        g
    }
}

/// For every `p`-set of hyperplanes, the flags it is adjacent to with the sign
/// of the ordering producing each.
fn adjacent_tuples(lattice: &IntersectionLattice, r: usize, p: usize) -> Vec<(Vec<usize>, Vec<(Flag, i64)>)> {
    let perms = permutations(p);
    crate::aomoto::subsets(r, p)
        .into_iter()
        .filter_map(|set| {
            let hits: Vec<(Flag, i64)> = perms
                .iter()
                .filter_map(|sigma| {
                    let ordered: Vec<usize> = sigma.iter().map(|&s| set[s]).collect();
                    flag_of_tuple(lattice, &ordered).map(|f| (f, permutation_sign(sigma)))
                })
                .collect();
            (!hits.is_empty()).then_some((set, hits))
        })
        .collect()
}

/// `S^p(F, G) = (1/p!) Σ_{H̄} sgn(σ) sgn(σ') a(H_1)…a(H_p)`, summed over ordered
/// tuples `H̄` with `F = F(H_σ)` and `G = F(H_σ')`.
pub fn contravariant_form<F: Field>(
    arr: &WeightedArrangement<F>,
    lattice: &IntersectionLattice,
    f: &Flag,
    g: &Flag,
) -> F {
    assert_eq!(f.degree(), g.degree(), "flags of different degree");
    let p = f.degree();
    let perms = permutations(p);
    let mut total = F::zero();
    let mut fact = 1i64;
    for k in 2..=p as i64 {
        fact *= k;
    }
    for set in crate::aomoto::subsets(arr.num_forms(), p) {
        for tuple in &perms {
            let h: Vec<usize> = tuple.iter().map(|&s| set[s]).collect();
            let mut sf = None;
            let mut sg = None;
            for sigma in &perms {
                let ordered: Vec<usize> = sigma.iter().map(|&s| h[s]).collect();
                if let Some(fl) = flag_of_tuple(lattice, &ordered) {
                    if &fl == f {
                        sf = Some(permutation_sign(sigma));
                    }
                    if &fl == g {
                        sg = Some(permutation_sign(sigma));
                    }
                }
            }
            if let (Some(a), Some(b)) = (sf, sg) {
                let w = h.iter().fold(F::one(), |acc, &i| acc * arr.weight(i).clone());
                total = total + w * F::from_i64(a * b);
            }
        }
    }
    total / F::from_i64(fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{intersection_lattice, AffineForm};
    use crate::exactfield::{rat, Rational};

    fn arr(dim: usize, forms: Vec<(i64, Vec<i64>)>, weights: Vec<Rational>) -> WeightedArrangement {
        let forms = forms
            .into_iter()
            .map(|(c, g)| AffineForm::new(rat(c, 1), g.into_iter().map(|x| rat(x, 1)).collect()))
            .collect();
        WeightedArrangement::new(dim, forms, weights, None).unwrap()
    }

    fn two_points() -> WeightedArrangement {
        arr(1, vec![(-1, vec![1]), (1, vec![1])], vec![rat(2, 1), rat(5, 1)])
    }

    fn crossing() -> WeightedArrangement {
        arr(2, vec![(0, vec![1, 0]), (0, vec![0, 1])], vec![rat(2, 1), rat(3, 1)])
    }

    #[test]
    fn flag_counts() {
        let l = intersection_lattice(&two_points());
        assert_eq!(enumerate_flags(&l, 1).len(), 2);
        assert_eq!(enumerate_flags(&l, 0).len(), 1);
        let l = intersection_lattice(&crossing());
        assert_eq!(enumerate_flags(&l, 2).len(), 2);
    }

    #[test]
    fn crossing_lines_relation() {
        let l = intersection_lattice(&crossing());
        let rels = flag_relations(&l, 2);
        assert_eq!(rels, vec![Relation { gap: 1, support: vec![0, 1] }]);
        assert!(flag_relations(&l, 1).is_empty());
    }

    #[test]
    fn phi_examples() {
        let a = crossing();
        let l = intersection_lattice(&a);
        let s = FlagSpace::new(&l, 2);
        let f = s.phi(&l, &[0, 1]);
        let through0 = s.index_of(&flag_of_tuple(&l, &[0, 1]).unwrap()).unwrap();
        let through1 = s.index_of(&flag_of_tuple(&l, &[1, 0]).unwrap()).unwrap();
        assert_eq!(f.values[through0], 1);
        assert_eq!(f.values[through1], -1);
        assert!(s.annihilates_relations(&f));
        let neg = s.phi(&l, &[1, 0]);
        assert_eq!(neg.values, f.values.iter().map(|v| -v).collect::<Vec<_>>());

        let p = two_points();
        let l = intersection_lattice(&p);
        let s = FlagSpace::new(&l, 1);
        let at0 = s.index_of(&flag_of_tuple(&l, &[0]).unwrap()).unwrap();
        let phi0 = s.phi(&l, &[0]);
        assert_eq!(phi0.values[at0], 1);
        assert_eq!(phi0.values.iter().sum::<i64>(), 1);
    }

    #[test]
    fn phi_annihilates_relations_with_triple_point() {
        let a = arr(2, vec![(0, vec![1, 0]), (0, vec![1, 1]), (0, vec![0, 1])], vec![rat(1, 1); 3]);
        let l = intersection_lattice(&a);
        let s = FlagSpace::new(&l, 2);
        assert_eq!(s.relations.len(), 1);
        for t in [[0, 1], [0, 2], [1, 2]] {
            let f = s.phi(&l, &t);
            assert!(!f.is_zero());
            assert!(s.annihilates_relations(&f));
        }
        assert_eq!(s.quotient_dim(), 2);
    }

    #[test]
    fn contravariant_examples() {
        let a = two_points();
        let l = intersection_lattice(&a);
        let f1 = &flag_of_tuple(&l, &[0]).unwrap();
        let f2 = &flag_of_tuple(&l, &[1]).unwrap();
        assert_eq!(contravariant_form(&a, &l, f1, f1), rat(2, 1));
        assert_eq!(contravariant_form(&a, &l, f1, f2), rat(0, 1));
        let s0 = FlagSpace::new(&l, 0);
        assert_eq!(contravariant_form(&a, &l, &s0.raw_flags[0], &s0.raw_flags[0]), rat(1, 1));

        let a = crossing();
        let l = intersection_lattice(&a);
        let f = flag_of_tuple(&l, &[0, 1]).unwrap();
        let g = flag_of_tuple(&l, &[1, 0]).unwrap();
        assert_eq!(contravariant_form(&a, &l, &f, &f), rat(6, 1));
        assert_eq!(contravariant_form(&a, &l, &f, &g), rat(-6, 1));
        let space = FlagSpace::new(&l, 2);
        let gram = space.contravariant_gram(&a, &l);
        let (i, j) = (space.index_of(&f).unwrap(), space.index_of(&g).unwrap());
        assert_eq!((gram[(i, i)].clone(), gram[(i, j)].clone(), gram[(j, j)].clone()), (rat(6, 1), rat(-6, 1), rat(6, 1)));
    }
}
