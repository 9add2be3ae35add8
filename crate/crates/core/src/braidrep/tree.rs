//! Parenthesizations of `V^{⊗n}` and the associativity moves between them.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Range;

use super::BraidError;

/// Full binary tree with leaves `0..n` in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParenTree {
    Leaf(usize),
    Node(Box<ParenTree>, Box<ParenTree>),
}

/// One associativity move on a subtree whose three parts cover the leaf
/// ranges `a`, `b`, `c`. Forward is `((A B) C) → (A (B C))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocMove {
    pub a: Range<usize>,
    pub b: Range<usize>,
    pub c: Range<usize>,
    pub forward: bool,
}

fn node(l: ParenTree, r: ParenTree) -> ParenTree {
    ParenTree::Node(Box::new(l), Box::new(r))
}

impl ParenTree {
    pub fn left_comb(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(ParenTree::Leaf(0), |acc, k| node(acc, ParenTree::Leaf(k)))
    }

    pub fn right_comb(n: usize) -> Self {
        Self::right_comb_range(0..n)
    }

    fn right_comb_range(range: Range<usize>) -> Self {
        let last = range.end - 1;
        (range.start..last).rev().fold(ParenTree::Leaf(last), |acc, k| node(ParenTree::Leaf(k), acc))
    }

    /// Left comb in which leaves `i` and `i + 1` (0-based) form a subtree.
    pub fn with_adjacent_pair(n: usize, i: usize) -> Result<Self, BraidError> {
        if i + 1 >= n {
            return Err(BraidError::IndexOutOfRange { index: i + 1, n });
        }
        let pair = node(ParenTree::Leaf(i), ParenTree::Leaf(i + 1));
        let head = if i == 0 { pair } else { node(Self::left_comb(i), pair) };
        Ok((i + 2..n).fold(head, |acc, k| node(acc, ParenTree::Leaf(k))))
    }

    /// Parse the `Display` form, e.g. `((1 2) (3 4))` with 1-based leaves.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        fn go(toks: &[String], pos: &mut usize) -> Result<ParenTree, BraidError> {
            let bad = |m: &str| BraidError::Invalid(format!("tree syntax: {m}"));
            let tok = toks.get(*pos).ok_or_else(|| bad("unexpected end"))?;
            *pos += 1;
            if tok == "(" {
                let l = go(toks, pos)?;
                let r = go(toks, pos)?;
                if toks.get(*pos).map(String::as_str) != Some(")") {
                    return Err(bad("expected `)`"));
                }
                *pos += 1;
                Ok(node(l, r))
            } else {
                let k: usize = tok.parse().map_err(|_| bad("bad leaf"))?;
                if k == 0 {
                    return Err(bad("leaves are numbered from 1"));
                }
                Ok(ParenTree::Leaf(k - 1))
            }
        }
        let toks: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(String::from)
            .collect();
        let mut pos = 0;
        let tree = go(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(BraidError::Invalid("tree syntax: trailing tokens".into()));
        }
        let n = tree.leaf_count();
        if tree.span() != (0..n) || !tree.leaves_in_order() {
            return Err(BraidError::Invalid("tree leaves must be 1..n in order".into()));
        }
        Ok(tree)
    }

    fn leaves_in_order(&self) -> bool {
        match self {
            ParenTree::Leaf(_) => true,
            ParenTree::Node(l, r) => l.leaves_in_order() && r.leaves_in_order() && l.span().end == r.span().start,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ParenTree::Leaf(_) => 1,
            ParenTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn span(&self) -> Range<usize> {
        match self {
            ParenTree::Leaf(k) => *k..*k + 1,
            ParenTree::Node(l, r) => l.span().start..r.span().end,
        }
    }

    /// Forward moves carrying this tree to the right comb: rotate at the
    /// root until its left child is a leaf, then descend to the right.
    pub fn path_to_right_comb(&self) -> Vec<AssocMove> {
        let mut moves = Vec::new();
        let mut t = self.clone();
        normalize_right(&mut t, &mut moves);
        moves
    }

    /// Backward moves carrying this tree to the left comb.
    pub fn path_to_left_comb(&self) -> Vec<AssocMove> {
        let mut moves = Vec::new();
        let mut t = self.clone();
        normalize_left(&mut t, &mut moves);
        moves
    }

    /// Every tree reachable by one move anywhere in the tree.
    pub fn neighbors(&self) -> Vec<(ParenTree, AssocMove)> {
        let mut out = Vec::new();
        if let ParenTree::Node(l, r) = self {
            if let ParenTree::Node(a, b) = &**l {
                let mv = AssocMove { a: a.span(), b: b.span(), c: r.span(), forward: true };
                out.push((node((**a).clone(), node((**b).clone(), (**r).clone())), mv));
            }
            if let ParenTree::Node(b, c) = &**r {
                let mv = AssocMove { a: l.span(), b: b.span(), c: c.span(), forward: false };
                out.push((node(node((**l).clone(), (**b).clone()), (**c).clone()), mv));
            }
            for (t, mv) in l.neighbors() {
                out.push((node(t, (**r).clone()), mv));
            }
            for (t, mv) in r.neighbors() {
                out.push((node((**l).clone(), t), mv));
            }
        }
        out
    }

    /// Shortest move sequence between two trees, by breadth-first search
    /// over all trees with the same leaves.
    pub fn bfs_path(from: &ParenTree, to: &ParenTree) -> Result<Vec<AssocMove>, BraidError> {
        if from.leaf_count() != to.leaf_count() {
            return Err(BraidError::LeafMismatch { from: from.leaf_count(), to: to.leaf_count() });
        }
        let mut parent: HashMap<ParenTree, Option<(ParenTree, AssocMove)>> = HashMap::new();
        parent.insert(from.clone(), None);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(t) = queue.pop_front() {
            if &t == to {
                break;
            }
            for (next, mv) in t.neighbors() {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((t.clone(), mv)));
                    queue.push_back(next);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to.clone();
        while let Some(Some((prev, mv))) = parent.get(&cur) {
            path.push(mv.clone());
            cur = prev.clone();
        }
        path.reverse();
        Ok(path)
    }
}

fn normalize_right(t: &mut ParenTree, moves: &mut Vec<AssocMove>) {
    loop {
        let ParenTree::Node(l, r) = t else { return };
        if let ParenTree::Node(a, b) = &**l {
            moves.push(AssocMove { a: a.span(), b: b.span(), c: r.span(), forward: true });
            *t = node((**a).clone(), node((**b).clone(), (**r).clone()));
        } else {
            normalize_right(r, moves);
            return;
        }
    }
}

fn normalize_left(t: &mut ParenTree, moves: &mut Vec<AssocMove>) {
    loop {
        let ParenTree::Node(l, r) = t else { return };
        if let ParenTree::Node(b, c) = &**r {
            moves.push(AssocMove { a: l.span(), b: b.span(), c: c.span(), forward: false });
            *t = node(node((**l).clone(), (**b).clone()), (**c).clone());
        } else {
            normalize_left(l, moves);
            return;
        }
    }
}

/// Apply moves symbolically; used to confirm a path really ends at its
/// target.
pub fn apply_moves(tree: &ParenTree, moves: &[AssocMove]) -> Option<ParenTree> {
    fn apply_one(t: &ParenTree, mv: &AssocMove) -> Option<ParenTree> {
        let ParenTree::Node(l, r) = t else { return None };
        let whole = mv.a.start..mv.c.end;
        if t.span() == whole {
            return t.neighbors().into_iter().find(|(_, m)| m == mv && m.a.start == whole.start).map(|(n, _)| n);
        }
        if l.span().end >= whole.end {
            Some(node(apply_one(l, mv)?, (**r).clone()))
        } else {
            Some(node((**l).clone(), apply_one(r, mv)?))
        }
    }
    moves.iter().try_fold(tree.clone(), |t, mv| apply_one(&t, mv))
}

/// All full binary trees on the leaves `range`.
pub fn all_trees(range: Range<usize>) -> Vec<ParenTree> {
    if range.len() == 1 {
        return vec![ParenTree::Leaf(range.start)];
    }
    let mut out = Vec::new();
    for split in range.start + 1..range.end {
        for l in all_trees(range.start..split) {
            for r in all_trees(split..range.end) {
                out.push(node(l.clone(), r));
            }
        }
    }
    out
}

impl fmt::Display for ParenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParenTree::Leaf(k) => write!(f, "{}", k + 1),
            ParenTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combs_and_pairs() {
        assert_eq!(ParenTree::left_comb(4).to_string(), "(((1 2) 3) 4)");
        assert_eq!(ParenTree::right_comb(4).to_string(), "(1 (2 (3 4)))");
        assert_eq!(ParenTree::with_adjacent_pair(4, 0).unwrap().to_string(), "(((1 2) 3) 4)");
        assert_eq!(ParenTree::with_adjacent_pair(4, 1).unwrap().to_string(), "((1 (2 3)) 4)");
        assert_eq!(ParenTree::with_adjacent_pair(4, 2).unwrap().to_string(), "((1 2) (3 4))");
        assert!(ParenTree::with_adjacent_pair(4, 3).is_err());
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_trees(0..n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn normal_form_paths_reach_their_targets() {
        for n in 1..=6 {
            for t in all_trees(0..n) {
                assert_eq!(apply_moves(&t, &t.path_to_right_comb()), Some(ParenTree::right_comb(n)));
                assert_eq!(apply_moves(&t, &t.path_to_left_comb()), Some(ParenTree::left_comb(n)));
            }
        }
    }

    #[test]
    fn bfs_paths_connect() {
        let trees = all_trees(0..5);
        for a in &trees {
            for b in trees.iter().step_by(3) {
                let path = ParenTree::bfs_path(a, b).unwrap();
                assert_eq!(apply_moves(a, &path).as_ref(), Some(b));
            }
        }
        assert!(ParenTree::bfs_path(&ParenTree::left_comb(3), &ParenTree::left_comb(4)).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for t in all_trees(0..5) {
            assert_eq!(ParenTree::parse(&t.to_string()).unwrap(), t);
        }
        assert!(ParenTree::parse("((1 3) 2)").is_err());
        assert!(ParenTree::parse("(1 2").is_err());
    }
}
