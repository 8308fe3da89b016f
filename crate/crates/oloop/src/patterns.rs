//! Connectivity states of a periodic cut of circumference `L`: cyclically
//! balanced parenthesis words for even `L`, defect patterns (one unmatched
//! point) for odd `L`, and their arc geometry.
//!
//! Conventions fixed project-wide:
//! - positions are `0..L` around the cut; gap `g` lies between positions `g`
//!   and `g+1 mod L`; the seam is gap `L-1`;
//! - an arc runs from its opening parenthesis `from` to its closing
//!   parenthesis `to` and covers the cyclic gap interval `[from .. to-1]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Hard cap imposed by the `u32` word encoding.
pub const MAX_CIRCUMFERENCE: usize = 30;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Paren {
    Open,
    Close,
}

impl Paren {
    pub fn flip(self) -> Paren {
        match self {
            Paren::Open => Paren::Close,
            Paren::Close => Paren::Open,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Paren::Open => '(',
            Paren::Close => ')',
        }
    }
}

/// Set of inter-position gaps as a bitmask (bit `g` = gap `g`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct GapSet(pub u32);

impl GapSet {
    pub fn empty() -> Self {
        GapSet(0)
    }

    /// Cyclic gap interval `[from .. to-1]`, i.e. the gaps swept moving
    /// forward from position `from` to position `to`.
    pub fn cyclic_interval(from: usize, to: usize, l: usize) -> Self {
        let span = (to + l - from) % l;
        let mut mask = 0u32;
        for d in 0..span {
            mask |= 1 << ((from + d) % l);
        }
        GapSet(mask)
    }

    pub fn contains(self, g: usize) -> bool {
        self.0 >> g & 1 == 1
    }

    pub fn toggle(&mut self, g: usize) {
        self.0 ^= 1 << g;
    }

    pub fn xor(self, other: GapSet) -> GapSet {
        GapSet(self.0 ^ other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self, l: usize) -> impl Iterator<Item = usize> {
        (0..l).filter(move |&g| self.contains(g))
    }
}

/// Geometric realization of one parenthesis match.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ArcSpan {
    /// Position of the opening parenthesis.
    pub from: usize,
    /// Position of the matching closing parenthesis.
    pub to: usize,
    /// Contiguous cyclic interval of gaps from `from` to `to`.
    pub covered_gaps: GapSet,
    /// Whether the seam gap `L-1` is covered.
    pub crosses_seam: bool,
}

impl ArcSpan {
    fn new(from: usize, to: usize, l: usize) -> Self {
        let covered_gaps = GapSet::cyclic_interval(from, to, l);
        ArcSpan {
            from,
            to,
            covered_gaps,
            crosses_seam: covered_gaps.contains(l - 1),
        }
    }
}

/// Common interface of even and odd connectivity states, as consumed by the
/// transfer and glue machinery.
pub trait CutState:
    Clone + Copy + Eq + Ord + std::hash::Hash + fmt::Display + fmt::Debug + Send + Sync + Sized
{
    fn circumference(&self) -> usize;

    /// Position of the unmatched point, if any.
    fn defect(&self) -> Option<usize>;

    /// Symbol at `position`, `None` at the defect.
    fn symbol_at(&self, position: usize) -> Option<Paren>;

    /// All arcs of the induced matching, sorted by opening position.
    fn arcs(&self) -> Vec<ArcSpan>;

    /// Rebuild a state from per-position symbols (`None` exactly at the
    /// defect for odd states).
    fn from_symbols(symbols: &[Option<Paren>]) -> Result<Self>;

    /// All states of circumference `l` in canonical (lexicographic) order.
    fn enumerate(l: usize) -> Result<Vec<Self>>;

    fn rotate(&self, shift: i64) -> Self;

    fn reflect(&self) -> Self;
}

// ---------------------------------------------------------------------------
// even L
// ---------------------------------------------------------------------------

/// Connectivity state of an even-circumference cut: a cyclically balanced
/// parenthesis word. The word itself is the canonical form; the matching is
/// derived on demand.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LinkPattern {
    len: u8,
    /// Bit `i` set iff the symbol at position `i` is `Close`.
    bits: u32,
}

impl LinkPattern {
    pub fn from_word(word: &[Paren]) -> Result<Self> {
        let l = word.len();
        if l < 2 || l % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "link pattern length must be even and >= 2, got {l}"
            )));
        }
        if l > MAX_CIRCUMFERENCE {
            return Err(Error::InvalidArgument(format!(
                "circumference {l} exceeds the supported maximum {MAX_CIRCUMFERENCE}"
            )));
        }
        let opens = word.iter().filter(|&&p| p == Paren::Open).count();
        if opens * 2 != l {
            return Err(Error::InvalidArgument(format!(
                "word must contain {} of each symbol, got {opens} open",
                l / 2
            )));
        }
        let mut bits = 0u32;
        for (i, &p) in word.iter().enumerate() {
            if p == Paren::Close {
                bits |= 1 << i;
            }
        }
        Ok(LinkPattern {
            len: l as u8,
            bits,
        })
    }

    pub fn symbol(&self, i: usize) -> Paren {
        debug_assert!(i < self.len as usize);
        if self.bits >> i & 1 == 1 {
            Paren::Close
        } else {
            Paren::Open
        }
    }

    pub fn word(&self) -> Vec<Paren> {
        (0..self.len as usize).map(|i| self.symbol(i)).collect()
    }

    /// Fully nested word `((...))`.
    pub fn nested(l: usize) -> Result<Self> {
        let half = l / 2;
        let word: Vec<Paren> = (0..l)
            .map(|i| if i < half { Paren::Open } else { Paren::Close })
            .collect();
        Self::from_word(&word)
    }

    /// Alternating word `()()...`.
    pub fn alternating(l: usize) -> Result<Self> {
        let word: Vec<Paren> = (0..l)
            .map(|i| if i % 2 == 0 { Paren::Open } else { Paren::Close })
            .collect();
        Self::from_word(&word)
    }
}

impl PartialOrd for LinkPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinkPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for i in 0..self.len as usize {
                let ord = self.symbol(i).cmp(&other.symbol(i));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len as usize {
            write!(f, "{}", self.symbol(i).as_char())?;
        }
        Ok(())
    }
}

/// All balanced-count words of even length `l`, lexicographic (`(` < `)`).
pub fn enumerate_even(l: usize) -> Result<Vec<LinkPattern>> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "enumerate_even requires even l >= 2, got {l}"
        )));
    }
    if l > MAX_CIRCUMFERENCE {
        return Err(Error::InvalidArgument(format!(
            "circumference {l} exceeds the supported maximum {MAX_CIRCUMFERENCE}"
        )));
    }
    let mut out = Vec::new();
    let mut word = vec![Paren::Open; l];
    fn rec(word: &mut Vec<Paren>, i: usize, opens_left: usize, closes_left: usize, out: &mut Vec<LinkPattern>) {
        if i == word.len() {
            out.push(LinkPattern::from_word(word).expect("valid by construction"));
            return;
        }
        if opens_left > 0 {
            word[i] = Paren::Open;
            rec(word, i + 1, opens_left - 1, closes_left, out);
        }
        if closes_left > 0 {
            word[i] = Paren::Close;
            rec(word, i + 1, opens_left, closes_left - 1, out);
        }
    }
    rec(&mut word, 0, l / 2, l / 2, &mut out);
    Ok(out)
}

impl CutState for LinkPattern {
    fn circumference(&self) -> usize {
        self.len as usize
    }

    fn defect(&self) -> Option<usize> {
        None
    }

    fn symbol_at(&self, position: usize) -> Option<Paren> {
        Some(self.symbol(position))
    }

    /// Cyclic matching by repeated removal of adjacent `()` pairs; the arc of
    /// a removed pair covers the whole original interval between them. The
    /// result is independent of removal order.
    fn arcs(&self) -> Vec<ArcSpan> {
        let l = self.len as usize;
        let mut alive: Vec<usize> = (0..l).collect();
        let mut arcs = Vec::with_capacity(l / 2);
        while !alive.is_empty() {
            let n = alive.len();
            let mut removed = None;
            for k in 0..n {
                let a = alive[k];
                let b = alive[(k + 1) % n];
                if self.symbol(a) == Paren::Open && self.symbol(b) == Paren::Close {
                    arcs.push(ArcSpan::new(a, b, l));
                    removed = Some((a, b));
                    break;
                }
            }
            let (a, b) = removed.expect("balanced cyclic word always has an adjacent pair");
            alive.retain(|&p| p != a && p != b);
        }
        arcs.sort_by_key(|a| a.from);
        arcs
    }

    fn from_symbols(symbols: &[Option<Paren>]) -> Result<Self> {
        let word: Option<Vec<Paren>> = symbols.iter().copied().collect();
        let word = word.ok_or_else(|| {
            Error::Internal("even state reconstruction saw a defect symbol".into())
        })?;
        LinkPattern::from_word(&word)
    }

    fn enumerate(l: usize) -> Result<Vec<Self>> {
        enumerate_even(l)
    }

    fn rotate(&self, shift: i64) -> Self {
        let l = self.len as usize;
        let s = shift.rem_euclid(l as i64) as usize;
        let mut bits = 0u32;
        for i in 0..l {
            if self.bits >> i & 1 == 1 {
                bits |= 1 << ((i + s) % l);
            }
        }
        LinkPattern {
            len: self.len,
            bits,
        }
    }

    fn reflect(&self) -> Self {
        let l = self.len as usize;
        let mut bits = 0u32;
        for i in 0..l {
            // mirror position and flip the symbol
            if self.bits >> i & 1 == 0 {
                bits |= 1 << (l - 1 - i);
            }
        }
        LinkPattern {
            len: self.len,
            bits,
        }
    }
}

// ---------------------------------------------------------------------------
// odd L
// ---------------------------------------------------------------------------

/// Connectivity state of an odd-circumference cut: one unmatched point (the
/// defect, whose strand spans the half-cylinder) plus a linearly balanced
/// word of `L-1` symbols read cyclically starting just after the defect.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DefectPattern {
    len: u8,
    defect: u8,
    /// Bit `j` set iff word symbol `j` (at position `defect+1+j mod L`) is `Close`.
    bits: u32,
}

fn linearly_balanced(word: &[Paren]) -> bool {
    let mut depth = 0i32;
    for &p in word {
        depth += if p == Paren::Open { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

impl DefectPattern {
    pub fn from_parts(l: usize, defect: usize, word: &[Paren]) -> Result<Self> {
        if l < 3 || l % 2 != 1 {
            return Err(Error::InvalidArgument(format!(
                "defect pattern circumference must be odd and >= 3, got {l}"
            )));
        }
        if l > MAX_CIRCUMFERENCE {
            return Err(Error::InvalidArgument(format!(
                "circumference {l} exceeds the supported maximum {MAX_CIRCUMFERENCE}"
            )));
        }
        if defect >= l {
            return Err(Error::InvalidArgument(format!(
                "defect position {defect} out of range for circumference {l}"
            )));
        }
        if word.len() != l - 1 {
            return Err(Error::InvalidArgument(format!(
                "word length {} does not match circumference {l}",
                word.len()
            )));
        }
        if !linearly_balanced(word) {
            return Err(Error::InvalidArgument(
                "word is not linearly balanced after the defect".into(),
            ));
        }
        let mut bits = 0u32;
        for (j, &p) in word.iter().enumerate() {
            if p == Paren::Close {
                bits |= 1 << j;
            }
        }
        Ok(DefectPattern {
            len: l as u8,
            defect: defect as u8,
            bits,
        })
    }

    pub fn defect_position(&self) -> usize {
        self.defect as usize
    }

    fn word_symbol(&self, j: usize) -> Paren {
        if self.bits >> j & 1 == 1 {
            Paren::Close
        } else {
            Paren::Open
        }
    }

    pub fn word(&self) -> Vec<Paren> {
        (0..self.len as usize - 1).map(|j| self.word_symbol(j)).collect()
    }
}

impl PartialOrd for DefectPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DefectPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len, self.defect)
            .cmp(&(other.len, other.defect))
            .then_with(|| {
                for j in 0..self.len as usize - 1 {
                    let ord = self.word_symbol(j).cmp(&other.word_symbol(j));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Display for DefectPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.len as usize;
        for p in 0..l {
            match self.symbol_at(p) {
                None => write!(f, "|")?,
                Some(s) => write!(f, "{}", s.as_char())?,
            }
        }
        Ok(())
    }
}

/// All `(defect, balanced word)` states of odd length `l`, ordered by defect
/// position then word.
pub fn enumerate_odd(l: usize) -> Result<Vec<DefectPattern>> {
    if l < 3 || l % 2 != 1 {
        return Err(Error::InvalidArgument(format!(
            "enumerate_odd requires odd l >= 3, got {l}"
        )));
    }
    if l > MAX_CIRCUMFERENCE {
        return Err(Error::InvalidArgument(format!(
            "circumference {l} exceeds the supported maximum {MAX_CIRCUMFERENCE}"
        )));
    }
    let mut words = Vec::new();
    let mut word = vec![Paren::Open; l - 1];
    fn rec(word: &mut Vec<Paren>, i: usize, depth: i32, out: &mut Vec<Vec<Paren>>) {
        if i == word.len() {
            if depth == 0 {
                out.push(word.clone());
            }
            return;
        }
        let remaining = (word.len() - i) as i32;
        if depth + 1 <= remaining - 1 || (depth + 1 == 0 && remaining == 1) {
            // can still close everything
        }
        if depth + 1 <= remaining {
            word[i] = Paren::Open;
            rec(word, i + 1, depth + 1, out);
        }
        if depth > 0 {
            word[i] = Paren::Close;
            rec(word, i + 1, depth - 1, out);
        }
    }
    rec(&mut word, 0, 0, &mut words);
    let mut out = Vec::new();
    for d in 0..l {
        for w in &words {
            out.push(DefectPattern::from_parts(l, d, w)?);
        }
    }
    Ok(out)
}

impl CutState for DefectPattern {
    fn circumference(&self) -> usize {
        self.len as usize
    }

    fn defect(&self) -> Option<usize> {
        Some(self.defect as usize)
    }

    fn symbol_at(&self, position: usize) -> Option<Paren> {
        let l = self.len as usize;
        if position == self.defect as usize {
            return None;
        }
        let j = (position + l - (self.defect as usize + 1)) % l;
        Some(self.word_symbol(j))
    }

    fn arcs(&self) -> Vec<ArcSpan> {
        let l = self.len as usize;
        let d = self.defect as usize;
        let mut stack = Vec::new();
        let mut arcs = Vec::with_capacity((l - 1) / 2);
        for j in 0..l - 1 {
            let pos = (d + 1 + j) % l;
            match self.word_symbol(j) {
                Paren::Open => stack.push(pos),
                Paren::Close => {
                    let from = stack.pop().expect("linearly balanced");
                    arcs.push(ArcSpan::new(from, pos, l));
                }
            }
        }
        arcs.sort_by_key(|a| a.from);
        arcs
    }

    fn from_symbols(symbols: &[Option<Paren>]) -> Result<Self> {
        let l = symbols.len();
        let defects: Vec<usize> = symbols
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.is_none().then_some(i))
            .collect();
        if defects.len() != 1 {
            return Err(Error::Internal(format!(
                "odd state reconstruction expected one defect, found {}",
                defects.len()
            )));
        }
        let d = defects[0];
        let word: Vec<Paren> = (0..l - 1)
            .map(|j| symbols[(d + 1 + j) % l].expect("only the defect is None"))
            .collect();
        DefectPattern::from_parts(l, d, &word)
            .map_err(|e| Error::Internal(format!("reconstructed invalid odd state: {e}")))
    }

    fn enumerate(l: usize) -> Result<Vec<Self>> {
        enumerate_odd(l)
    }

    fn rotate(&self, shift: i64) -> Self {
        // the word is stored relative to the defect, so only the defect moves
        let l = self.len as usize;
        let s = shift.rem_euclid(l as i64) as usize;
        DefectPattern {
            len: self.len,
            defect: ((self.defect as usize + s) % l) as u8,
            bits: self.bits,
        }
    }

    fn reflect(&self) -> Self {
        let l = self.len as usize;
        let mut symbols: Vec<Option<Paren>> = vec![None; l];
        for p in 0..l {
            symbols[l - 1 - p] = self.symbol_at(p).map(Paren::flip);
        }
        Self::from_symbols(&symbols).expect("reflection preserves validity")
    }
}

// ---------------------------------------------------------------------------
// text form
// ---------------------------------------------------------------------------

/// A connectivity state of either parity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pattern {
    Even(LinkPattern),
    Odd(DefectPattern),
}

impl Pattern {
    pub fn circumference(&self) -> usize {
        match self {
            Pattern::Even(p) => p.circumference(),
            Pattern::Odd(p) => p.circumference(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Even(p) => p.fmt(f),
            Pattern::Odd(p) => p.fmt(f),
        }
    }
}

/// Parses the text form: `(` and `)` symbols with at most one `|` defect.
/// Inverse of `Display` for every valid state.
pub fn parse(text: &str) -> Result<Pattern> {
    let chars: Vec<char> = text.chars().collect();
    let l = chars.len();
    let mut defect = None;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | ')' => {}
            '|' => {
                if defect.is_some() {
                    return Err(Error::Parse {
                        pos: i,
                        msg: "more than one defect".into(),
                    });
                }
                defect = Some(i);
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                });
            }
        }
    }
    if l < 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("state too short: length {l}"),
        });
    }
    match defect {
        None => {
            if l % 2 != 0 {
                return Err(Error::Parse {
                    pos: l,
                    msg: "odd length requires a defect".into(),
                });
            }
            let opens = chars.iter().filter(|&&c| c == '(').count();
            if opens * 2 != l {
                return Err(Error::Parse {
                    pos: l,
                    msg: format!("unbalanced counts: {opens} open of {l}"),
                });
            }
            let word: Vec<Paren> = chars
                .iter()
                .map(|&c| if c == '(' { Paren::Open } else { Paren::Close })
                .collect();
            Ok(Pattern::Even(LinkPattern::from_word(&word).map_err(
                |e| Error::Parse {
                    pos: l,
                    msg: e.to_string(),
                },
            )?))
        }
        Some(d) => {
            if l % 2 != 1 {
                return Err(Error::Parse {
                    pos: d,
                    msg: "defect requires odd length".into(),
                });
            }
            // linear balance of the word read cyclically from the defect;
            // a violation means an arc would cross the defect strand
            let mut stack: Vec<usize> = Vec::new();
            let mut word = Vec::with_capacity(l - 1);
            for j in 0..l - 1 {
                let pos = (d + 1 + j) % l;
                match chars[pos] {
                    '(' => {
                        stack.push(pos);
                        word.push(Paren::Open);
                    }
                    ')' => {
                        if stack.pop().is_none() {
                            return Err(Error::Parse {
                                pos,
                                msg: "arc would cross the defect".into(),
                            });
                        }
                        word.push(Paren::Close);
                    }
                    _ => unreachable!("defect already consumed"),
                }
            }
            if let Some(&pos) = stack.first() {
                return Err(Error::Parse {
                    pos,
                    msg: "arc would cross the defect".into(),
                });
            }
            Ok(Pattern::Odd(DefectPattern::from_parts(l, d, &word).map_err(
                |e| Error::Parse {
                    pos: d,
                    msg: e.to_string(),
                },
            )?))
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl FromStr for LinkPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse(s)? {
            Pattern::Even(p) => Ok(p),
            Pattern::Odd(_) => Err(Error::Parse {
                pos: 0,
                msg: "expected an even state, found a defect".into(),
            }),
        }
    }
}

impl FromStr for DefectPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match parse(s)? {
            Pattern::Odd(p) => Ok(p),
            Pattern::Even(_) => Err(Error::Parse {
                pos: 0,
                msg: "expected an odd state with a defect".into(),
            }),
        }
    }
}

// ---------------------------------------------------------------------------


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_link_pattern(max_half: usize) -> impl Strategy<Value = LinkPattern> {
        (1..=max_half)
            .prop_flat_map(|h| {
                proptest::sample::subsequence((0..2 * h).collect::<Vec<_>>(), h)
                    .prop_map(move |opens| {
                        let mut word = vec![Paren::Close; 2 * h];
                        for i in opens {
                            word[i] = Paren::Open;
                        }
                        LinkPattern::from_word(&word).unwrap()
                    })
            })
    }

    proptest! {
        #[test]
        fn rotate_round_trip(p in arb_link_pattern(8), s in -40i64..40) {
            prop_assert_eq!(p.rotate(s).rotate(-s), p);
            prop_assert_eq!(p.rotate(p.circumference() as i64), p);
        }

        #[test]
        fn parse_format_round_trip(p in arb_link_pattern(10)) {
            let text = p.to_string();
            match parse(&text).unwrap() {
                Pattern::Even(q) => prop_assert_eq!(p, q),
                _ => prop_assert!(false),
            }
        }

        #[test]
        fn arc_gap_multiset_counts_nesting(p in arb_link_pattern(8)) {
            let l = p.circumference();
            let arcs = p.arcs();
            // each gap is covered once per arc nesting over it: the covered
            // sets of distinct arcs over a common gap must nest
            for g in 0..l {
                let over: Vec<_> = arcs.iter().filter(|a| a.covered_gaps.contains(g)).collect();
                for w in over.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let inter = a.covered_gaps.0 & b.covered_gaps.0;
                    prop_assert!(inter == a.covered_gaps.0 || inter == b.covered_gaps.0);
                }
            }
        }
    }
}
