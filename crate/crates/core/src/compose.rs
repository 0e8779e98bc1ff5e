//! OR-composition of Test Cover instances.
//!
//! Given `t` instances on the same `n` vertices and a shared budget `p`, the
//! composed instance has a cover of `2l + p` tests iff some input has a cover
//! of `p` tests, where `l = 2⌈log₂(t)/2⌉`.
//!
//! Vertex layout, in index order:
//!
//! * the `n` original vertices;
//! * `2l` layers, each an anchor vertex followed by a block of `p` cells;
//! * `l` pair vertices, one per pair of layers `(2j, 2j+1)`.
//!
//! Each pair `j` contributes two gadget tests `{pair_j, anchor, cells}`, one
//! per layer. They are the only tests touching anchors and pair vertices, so
//! every cover takes all `2l` of them. The remaining tests are lifted input
//! tests `E ∪ S`, where the selector `S` takes one cell from every layer: row
//! `h` in layer `2j` and row `h + bit_j(i) mod p` in layer `2j+1`. Separating
//! every cell from its anchor needs `p` lifted tests whose rows tile every
//! layer, which only happens when all of them share the bit pattern of a
//! single input `i`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{ceil_log2, Instance, Test};
use crate::partition::is_test_cover;
use crate::solver::{Decision, Solver};

/// Number of gadget layer pairs for `t` inputs, `2⌈log₂(t)/2⌉`.
pub fn gadget_width(t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::InvalidArgument("gadget width needs t >= 1".into()));
    }
    // ⌈x/2⌉ = ⌈⌈x⌉/2⌉
    Ok(2 * (ceil_log2(t) as usize).div_ceil(2))
}

/// Binary expansion of `i`, least significant bit first, padded to `l` bits.
pub fn bit_vector(i: usize, l: usize) -> Result<Vec<bool>> {
    if l < usize::BITS as usize && i >> l != 0 {
        return Err(Error::InvalidArgument(format!(
            "index {i} needs more than {l} bits"
        )));
    }
    Ok((0..l)
        .map(|b| b < usize::BITS as usize && (i >> b) & 1 == 1)
        .collect())
}

/// Vertex indices of the composed instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexLayout {
    pub n: usize,
    /// Number of layer pairs; there are `2l` layers.
    pub l: usize,
    /// Cells per layer (the shared budget).
    pub p: usize,
}

impl VertexLayout {
    pub fn new(n: usize, l: usize, p: usize) -> Self {
        VertexLayout { n, l, p }
    }

    pub fn layers(&self) -> usize {
        2 * self.l
    }

    fn layer_start(&self, layer: usize) -> usize {
        debug_assert!(layer < self.layers());
        self.n + layer * (self.p + 1)
    }

    /// Anchor vertex of `layer` (`0 ≤ layer < 2l`).
    pub fn anchor(&self, layer: usize) -> usize {
        self.layer_start(layer)
    }

    /// Cell `row` of `layer` (`0 ≤ row < p`).
    pub fn cell(&self, layer: usize, row: usize) -> usize {
        debug_assert!(row < self.p);
        self.layer_start(layer) + 1 + row
    }

    /// All cells of `layer`.
    pub fn cells(&self, layer: usize) -> Range<usize> {
        let start = self.layer_start(layer) + 1;
        start..start + self.p
    }

    /// Vertex shared by the gadget tests of layers `2·pair` and `2·pair + 1`.
    pub fn pair_vertex(&self, pair: usize) -> usize {
        debug_assert!(pair < self.l);
        self.n + self.layers() * (self.p + 1) + pair
    }

    /// `n + 2l(p+1) + l`.
    pub fn total(&self) -> usize {
        self.n + self.layers() * (self.p + 1) + self.l
    }
}

/// Selector sets of input `i`, one per row `h ∈ 0..p`, each sorted.
pub fn build_selector_sets(layout: &VertexLayout, i: usize) -> Result<Vec<Test>> {
    let bits = bit_vector(i, layout.l)?;
    Ok((0..layout.p)
        .map(|h| {
            bits.iter()
                .enumerate()
                .flat_map(|(j, &bit)| {
                    let shifted = (h + usize::from(bit)) % layout.p;
                    [layout.cell(2 * j, h), layout.cell(2 * j + 1, shifted)]
                })
                .collect()
        })
        .collect())
}

/// The `2l` gadget tests, ordered by pair and then by layer.
pub fn build_gadget_tests(layout: &VertexLayout) -> Vec<Test> {
    (0..layout.layers())
        .map(|layer| {
            let mut test = vec![layout.pair_vertex(layer / 2), layout.anchor(layer)];
            test.extend(layout.cells(layer));
            test.sort_unstable();
            test
        })
        .collect()
}

/// Which gadget test of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Layer `2·pair`.
    First,
    /// Layer `2·pair + 1`.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TestOrigin {
    Gadget {
        pair: usize,
        side: Side,
    },
    /// Test `test` of input `input`, joined with selector row `row`.
    Lifted {
        input: usize,
        test: usize,
        row: usize,
    },
}

#[derive(Debug, Clone)]
pub struct CompositionOutput {
    pub qstar: Instance,
    pub kstar: usize,
    pub layout: VertexLayout,
    /// Origin of every test of `qstar`, index-aligned.
    pub origins: Vec<TestOrigin>,
    pub inputs: Vec<Instance>,
}

impl CompositionOutput {
    pub fn t(&self) -> usize {
        self.inputs.len()
    }

    pub fn p(&self) -> usize {
        self.layout.p
    }

    fn index_of(&self) -> HashMap<TestOrigin, usize> {
        self.origins
            .iter()
            .enumerate()
            .map(|(idx, &o)| (o, idx))
            .collect()
    }
}

/// Composes budget-equivalent instances (same `n`, shared budget `p`).
///
/// For `t ≥ 2` the tests of the result are in lexicographic order. A single
/// input is returned as is, with `k* = p`.
pub fn compose(inputs: &[Instance], p: usize) -> Result<CompositionOutput> {
    let first = inputs.first().ok_or(Error::EmptyComposition)?;
    let n = first.n();
    if let Some((input, other)) = inputs.iter().enumerate().find(|(_, x)| x.n() != n) {
        return Err(Error::EquivalenceMismatch {
            input,
            expected: n,
            found: other.n(),
        });
    }
    let t = inputs.len();
    if t == 1 {
        return Ok(CompositionOutput {
            qstar: first.clone(),
            kstar: p,
            layout: VertexLayout::new(n, 0, p),
            origins: (0..first.m())
                .map(|test| TestOrigin::Lifted {
                    input: 0,
                    test,
                    row: 0,
                })
                .collect(),
            inputs: inputs.to_vec(),
        });
    }
    if p > 0 && n == 1 && inputs.iter().all(|x| x.m() == 0) {
        // Nothing could separate the cells from their anchors.
        return Err(Error::DegenerateComposition(
            "every input has a single vertex and no tests".into(),
        ));
    }

    let l = gadget_width(t)?;
    let layout = VertexLayout::new(n, l, p);
    let mut tagged: Vec<(Test, TestOrigin)> = build_gadget_tests(&layout)
        .into_iter()
        .enumerate()
        .map(|(layer, test)| {
            let side = if layer % 2 == 0 {
                Side::First
            } else {
                Side::Second
            };
            (
                test,
                TestOrigin::Gadget {
                    pair: layer / 2,
                    side,
                },
            )
        })
        .collect();
    for (i, input) in inputs.iter().enumerate() {
        let selectors = build_selector_sets(&layout, i)?;
        for (j, original) in input.tests().iter().enumerate() {
            for (row, selector) in selectors.iter().enumerate() {
                // Originals precede every gadget vertex, so concatenation stays sorted.
                let mut test = original.clone();
                test.extend_from_slice(selector);
                tagged.push((
                    test,
                    TestOrigin::Lifted {
                        input: i,
                        test: j,
                        row,
                    },
                ));
            }
        }
    }
    tagged.sort();
    if let Some(first) = tagged.windows(2).position(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateComposedTest {
            first,
            second: first + 1,
        });
    }
    let (tests, origins): (Vec<Test>, Vec<TestOrigin>) = tagged.into_iter().unzip();
    Ok(CompositionOutput {
        qstar: Instance::new(layout.total(), tests)?,
        kstar: 2 * l + p,
        layout,
        origins,
        inputs: inputs.to_vec(),
    })
}

fn check_input_cover(input: &Instance, witness: &[usize], p: usize, what: &str) -> Result<()> {
    if witness.len() > p {
        return Err(Error::WitnessTooLarge {
            size: witness.len(),
            limit: p,
        });
    }
    if !is_test_cover(input, witness)? {
        return Err(Error::NotACover(what.to_string()));
    }
    Ok(())
}

/// Turns a cover of input `i` with at most `p` tests into a cover of the
/// composed instance with exactly `2l + p` tests.
///
/// Row `h` is joined with the `h`-th witness test (ascending); rows beyond
/// the witness reuse its first test.
pub fn lift_witness(out: &CompositionOutput, i: usize, witness: &[usize]) -> Result<Vec<usize>> {
    let input = out.inputs.get(i).ok_or_else(|| {
        Error::InvalidArgument(format!("input index {i} out of range (t = {})", out.t()))
    })?;
    check_input_cover(input, witness, out.p(), &format!("input {i}"))?;
    let mut witness = witness.to_vec();
    witness.sort_unstable();
    if out.t() == 1 {
        return Ok(witness);
    }
    let fallback = match witness.first() {
        Some(&w) => w,
        None if input.m() > 0 || out.p() == 0 => 0,
        None => {
            return Err(Error::DegenerateComposition(format!(
                "input {i} has no test to pad the selector rows with"
            )))
        }
    };
    let index = out.index_of();
    let mut lifted: Vec<usize> = (0..out.layout.l)
        .flat_map(|pair| [Side::First, Side::Second].map(|side| TestOrigin::Gadget { pair, side }))
        .chain((0..out.p()).map(|row| TestOrigin::Lifted {
            input: i,
            test: witness.get(row).copied().unwrap_or(fallback),
            row,
        }))
        .map(|origin| index[&origin])
        .collect();
    lifted.sort_unstable();
    Ok(lifted)
}

/// Recovers an input index and a cover of that input from a cover of the
/// composed instance with at most `2l + p` tests.
pub fn extract_witness(
    out: &CompositionOutput,
    qstar_witness: &[usize],
) -> Result<(usize, Vec<usize>)> {
    if qstar_witness.len() > out.kstar {
        return Err(Error::WitnessTooLarge {
            size: qstar_witness.len(),
            limit: out.kstar,
        });
    }
    if !is_test_cover(&out.qstar, qstar_witness)? {
        return Err(Error::NotACover("the composed instance".into()));
    }
    let mut source: Option<usize> = None;
    let mut tests = Vec::new();
    for &idx in qstar_witness {
        if let TestOrigin::Lifted { input, test, .. } = out.origins[idx] {
            match source {
                Some(r) if r != input => {
                    return Err(Error::MixedOrigins {
                        first: r.min(input),
                        second: r.max(input),
                    })
                }
                _ => source = Some(input),
            }
            tests.push(test);
        }
    }
    tests.sort_unstable();
    tests.dedup();
    let r = source.unwrap_or(0);
    check_input_cover(&out.inputs[r], &tests, out.p(), &format!("input {r}"))?;
    Ok((r, tests))
}

/// Refuses verification runs beyond these sizes unless forced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_vertices: usize,
    pub max_budget: usize,
    pub force: bool,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_vertices: 40,
            max_budget: 8,
            force: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    /// The check has no content for this run.
    Skipped,
}

impl Check {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "pass",
            Check::Fail => "fail",
            Check::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionReport {
    pub p: usize,
    pub l: usize,
    pub kstar: usize,
    pub vertices: usize,
    pub tests: usize,
    /// Decision of each input at budget `p`.
    pub inputs: Vec<Decision>,
    /// Decision of the composed instance at budget `k*`.
    pub qstar: Decision,
    /// Optimum of the composed instance, computed when it is a YES instance.
    pub qstar_optimum: Option<usize>,
    /// Composed decision equals the OR of the input decisions.
    pub or_equivalence: Check,
    /// A YES composed instance has optimum exactly `k*` (needs `t ≥ 2`).
    pub exact_optimum: Check,
}

impl CompositionReport {
    pub fn passed(&self) -> bool {
        self.or_equivalence == Check::Pass && self.exact_optimum != Check::Fail
    }
}

impl fmt::Display for CompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {}", self.inputs.len())?;
        for (i, d) in self.inputs.iter().enumerate() {
            writeln!(f, "input {i} {d}")?;
        }
        writeln!(f, "budget {}", self.p)?;
        writeln!(f, "gadget-width {}", self.l)?;
        writeln!(f, "kstar {}", self.kstar)?;
        writeln!(f, "vertices {}", self.vertices)?;
        writeln!(f, "tests {}", self.tests)?;
        writeln!(f, "qstar {}", self.qstar)?;
        if let Some(opt) = self.qstar_optimum {
            writeln!(f, "optimum {opt}")?;
        }
        writeln!(f, "or-equivalence {}", self.or_equivalence)?;
        writeln!(f, "exact-optimum {}", self.exact_optimum)?;
        write!(f, "verdict {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Composes `inputs` and checks the OR-equivalence with the exact solver.
pub fn verify_composition(
    inputs: &[Instance],
    p: usize,
    guard: SizeGuard,
) -> Result<CompositionReport> {
    let out = compose(inputs, p)?;
    if !guard.force && (out.qstar.n() > guard.max_vertices || out.kstar > guard.max_budget) {
        return Err(Error::SizeGuard(format!(
            "composed instance has {} vertices and budget {} (limits {} and {}); pass --force to run anyway",
            out.qstar.n(),
            out.kstar,
            guard.max_vertices,
            guard.max_budget
        )));
    }
    let solver = Solver::default();
    let decisions: Vec<Decision> = inputs
        .par_iter()
        .map(|x| Decision::from(solver.decide(x, p).is_some()))
        .collect();
    let qstar = Decision::from(solver.decide(&out.qstar, out.kstar).is_some());
    let qstar_optimum = if qstar.is_yes() {
        solver.optimal_cover(&out.qstar).map(|c| c.len())
    } else {
        None
    };
    let any_yes = decisions.iter().any(|d| d.is_yes());
    let exact_optimum = match qstar_optimum {
        Some(opt) if out.t() >= 2 => Check::from_bool(opt == out.kstar),
        _ => Check::Skipped,
    };
    Ok(CompositionReport {
        p,
        l: out.layout.l,
        kstar: out.kstar,
        vertices: out.qstar.n(),
        tests: out.qstar.m(),
        inputs: decisions,
        qstar,
        qstar_optimum,
        or_equivalence: Check::from_bool(qstar.is_yes() == any_yes),
        exact_optimum,
    })
}
