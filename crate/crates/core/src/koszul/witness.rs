//! Chains of index sets whose coefficients have strictly increasing initial
//! monomials, extracted from a nonzero cycle with coefficients in a
//! submodule of a free module.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::monomial::{Monomial, TermOrder};

use super::{leading_monomial, Coefficient, ExtSet, KoszulChain};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStep {
    /// `J_k`, in the relabeled variables.
    pub set: ExtSet,
    /// `m_{J_k}`, the coefficient of `e_{J_k}` in the relabeled cycle.
    pub coefficient: Coefficient,
    /// Leading monomial of `m_{J_k}` under the chosen order.
    pub initial: Monomial,
    /// The index `j_k` added at this step (absent for `J_0`).
    pub added: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct WitnessChain {
    /// Variable `i` of the input is variable `permutation[i]` of `cycle`.
    pub permutation: Vec<usize>,
    /// The input cycle after relabeling, so that its initial exterior
    /// monomial is `e_{1..p}`.
    pub cycle: KoszulChain,
    pub order: TermOrder,
    pub steps: Vec<WitnessStep>,
}

impl WitnessChain {
    /// Rank of the coefficient vectors of the `m_{J_k}` over the field.
    pub fn coefficient_rank(&self) -> usize {
        let field = self.cycle.field();
        let mut columns: Vec<&Monomial> = self.steps.iter().flat_map(|s| s.coefficient.keys()).collect();
        columns.sort();
        columns.dedup();
        let columns = &columns;
        let trip: Vec<_> = self
            .steps
            .iter()
            .enumerate()
            .flat_map(|(r, s)| {
                s.coefficient.iter().map(move |(m, &v)| (r, columns.binary_search(&m).expect("collected"), v))
            })
            .collect();
        let m = SparseMatrix::from_triplets(field, self.steps.len(), columns.len(), trip);
        linalg::rank(field, &m)
    }

    /// The sets `J_k` expressed in the input's variable labels.
    pub fn original_sets(&self) -> Vec<ExtSet> {
        let mut inverse = vec![0; self.permutation.len()];
        for (i, &pi) in self.permutation.iter().enumerate() {
            inverse[pi] = i;
        }
        self.steps.iter().map(|s| s.set.permute(&inverse).0).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| self.order.compare(&w[0].initial, &w[1].initial) == Ordering::Less)
    }
}

#[derive(Serialize)]
struct StepView {
    set: Vec<usize>,
    initial: String,
}

impl Serialize for WitnessChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            permutation: Vec<usize>,
            steps: Vec<StepView>,
        }
        View {
            permutation: self.permutation.iter().map(|i| i + 1).collect(),
            steps: self
                .steps
                .iter()
                .map(|st| StepView { set: st.set.iter().map(|i| i + 1).collect(), initial: st.initial.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

/// Relabel `z` so its initial exterior monomial is `e_{1..p}`, then build
/// `J_0 = {1..p}` and `J_k = {1..p-k, j_1..j_k}` where each `j_k` comes from
/// the cancellation forced on the 1-cycle `∂_{J_{k-1} \ {p-k+1}}(z)`.
pub fn witness_chain(z: &KoszulChain, order: TermOrder) -> Result<WitnessChain> {
    if z.is_zero() {
        return Err(Error::UndefinedInput("witness chain of the zero cycle".into()));
    }
    if !z.space().module.embeds_in_free() {
        return Err(Error::Argument("witness chains need coefficients in a submodule of a free module".into()));
    }
    let Some(p) = z.hdeg() else {
        return Err(Error::Argument("chain must have a single homological degree".into()));
    };
    if !z.is_cycle() {
        return Err(Error::NotACycle);
    }
    let n = z.nvars();
    let (init, _) = z.initial_term().expect("nonzero");
    let mut permutation = vec![0; n];
    for (pos, i) in init.iter().chain((0..n).filter(|&i| !init.contains(i))).enumerate() {
        permutation[i] = pos;
    }
    let cycle = z.permute(&permutation)?.over_ring()?;
    debug_assert_eq!(cycle.initial_term().map(|t| t.0), Some(ExtSet::initial(p)));

    let lead = |c: &Coefficient| leading_monomial(c, order).cloned();
    let j0 = ExtSet::initial(p);
    let c0 = cycle.coefficient(j0);
    let mut steps = vec![WitnessStep { set: j0, initial: lead(&c0).expect("nonzero"), coefficient: c0, added: None }];
    let mut added: Vec<usize> = Vec::new();
    for k in 1..=p {
        let pivot = p - k;
        let contracted = ExtSet::initial(pivot).union(ExtSet::from_indices(added.iter().copied()));
        let one_cycle = cycle.partial_set(contracted);
        debug_assert_eq!(one_cycle.hdeg(), Some(1));
        let m_i = one_cycle.coefficient(ExtSet::from_indices([pivot]));
        let in_i = lead(&m_i).ok_or_else(|| Error::Argument("initial coefficient vanished".into()))?;
        let target = in_i.times_var(pivot);
        let j = (pivot + 1..n)
            .find(|&j| {
                !contracted.contains(j)
                    && target
                        .div_var(j)
                        .is_some_and(|q| one_cycle.coefficient(ExtSet::from_indices([j])).contains_key(&q))
            })
            .ok_or_else(|| Error::Argument(format!("no cancelling index for x{}*{in_i}", pivot + 1)))?;
        added.push(j);
        let set = ExtSet::initial(pivot).union(ExtSet::from_indices(added.iter().copied()));
        let coefficient = cycle.coefficient(set);
        let initial = lead(&coefficient).expect("cancelling term is nonzero");
        if order.compare(&initial, &steps.last().expect("J_0").initial) != Ordering::Greater {
            return Err(Error::Argument(format!(
                "order {order:?} is not degree refining with x1 > ... > xn: {initial} does not exceed {}",
                steps.last().unwrap().initial
            )));
        }
        steps.push(WitnessStep { set, coefficient, initial, added: Some(j) });
    }
    Ok(WitnessChain { permutation, cycle, order, steps })
}
