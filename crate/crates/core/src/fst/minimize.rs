//! Minimization over the `(input, output)` label alphabet: subset
//! construction, removal of states that cannot reach a final state, Moore
//! partition refinement, then breadth-first renumbering in label order so that
//! equal languages give structurally equal machines.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{LetterTransducer, StateId, Transition};
use crate::symbol::SymbolId;

type Label = (SymbolId, SymbolId);

/// A deterministic automaton over labels: per state, label → target.
struct Dfa {
    delta: Vec<BTreeMap<Label, usize>>,
    finals: Vec<bool>,
}

fn determinize(t: &LetterTransducer) -> Dfa {
    let start: BTreeSet<StateId> = BTreeSet::from([0]);
    let mut index: HashMap<BTreeSet<StateId>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut finals = Vec::new();
    let mut next = 0;
    while next < subsets.len() {
        let subset = subsets[next].clone();
        next += 1;
        finals.push(subset.iter().any(|&s| t.is_final(s)));
        let mut moves: BTreeMap<Label, BTreeSet<StateId>> = BTreeMap::new();
        for &s in &subset {
            for tr in t.transitions(s) {
                moves.entry(tr.label()).or_default().insert(tr.target);
            }
        }
        let mut row = BTreeMap::new();
        for (label, target) in moves {
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    index.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            row.insert(label, id);
        }
        delta.push(row);
    }
    Dfa { delta, finals }
}

/// Drops edges into states from which no final state is reachable.
fn trim(dfa: &mut Dfa) {
    let n = dfa.delta.len();
    let mut reverse = vec![Vec::new(); n];
    for (s, row) in dfa.delta.iter().enumerate() {
        for &to in row.values() {
            reverse[to].push(s);
        }
    }
    let mut live = dfa.finals.clone();
    let mut stack: Vec<usize> = (0..n).filter(|&s| live[s]).collect();
    while let Some(s) = stack.pop() {
        for &p in &reverse[s] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    for row in &mut dfa.delta {
        row.retain(|_, to| live[*to]);
    }
}

/// Class of every state after Moore refinement.
fn refine(dfa: &Dfa) -> Vec<usize> {
    let n = dfa.delta.len();
    let mut class: Vec<usize> = dfa.finals.iter().map(|&f| f as usize).collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<(Label, usize)>), usize> = HashMap::with_capacity(n);
        let mut next = Vec::with_capacity(n);
        for s in 0..n {
            let sig: Vec<(Label, usize)> = dfa.delta[s].iter().map(|(&l, &to)| (l, class[to])).collect();
            let fresh = ids.len();
            next.push(*ids.entry((class[s], sig)).or_insert(fresh));
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

/// Returns the minimal deterministic transducer over `(input, output)`
/// labels accepting the same label sequences as `t`.
pub fn minimize(t: &LetterTransducer) -> LetterTransducer {
    let mut dfa = determinize(t);
    trim(&mut dfa);
    let class = refine(&dfa);

    // representative state per class
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for (s, &c) in class.iter().enumerate() {
        rep.entry(c).or_insert(s);
    }

    let mut number: HashMap<usize, StateId> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([class[0]]);
    number.insert(class[0], 0);
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for &to in dfa.delta[rep[&c]].values() {
            let tc = class[to];
            if !number.contains_key(&tc) {
                number.insert(tc, number.len() as StateId);
                queue.push_back(tc);
            }
        }
    }

    let mut states = Vec::with_capacity(order.len());
    let mut finals = Vec::with_capacity(order.len());
    for &c in &order {
        let r = rep[&c];
        finals.push(dfa.finals[r]);
        states.push(
            dfa.delta[r]
                .iter()
                .map(|(&(input, output), &to)| Transition { input, output, target: number[&class[to]] })
                .collect(),
        );
    }
    LetterTransducer::from_parts(t.symbols.clone(), states, finals, t.direction, true)
}
