use super::profile::norm_profile;
use super::sample::FuncSample;
use crate::constructions::{diagonal_below, minorize_to_pl, Family};
use crate::error::{GermError, Result};
use crate::germ::{validate, Germ, GridWindow, PlGerm};
use crate::order::{compare_germwise, CompareMode, OrderVerdict};

/// What a net node carries: a germ or an exact sample of a function.
#[derive(Debug, Clone)]
pub enum NodeValue {
    Germ(Germ),
    Sample(FuncSample),
}

impl NodeValue {
    fn start(&self) -> u64 {
        match self {
            NodeValue::Germ(g) => g.start(),
            NodeValue::Sample(s) => s.j_from(),
        }
    }
}

impl From<Germ> for NodeValue {
    fn from(g: Germ) -> NodeValue {
        NodeValue::Germ(g)
    }
}

impl From<FuncSample> for NodeValue {
    fn from(s: FuncSample) -> NodeValue {
        NodeValue::Sample(s)
    }
}

/// `a - b` as a sample with ball range `window`.
pub fn difference(a: &NodeValue, b: &NodeValue, window: &GridWindow) -> Result<FuncSample> {
    let d = match (a, b) {
        (NodeValue::Germ(x), NodeValue::Germ(Germ::Zero)) => FuncSample::from_germ(x, window)?,
        (NodeValue::Germ(x), NodeValue::Germ(y)) => {
            FuncSample::from_germ(x, window)?.sub(&FuncSample::from_germ(y, window)?)?
        }
        (NodeValue::Sample(s), NodeValue::Germ(g)) => s.sub_germ(g)?,
        (NodeValue::Germ(g), NodeValue::Sample(s)) => s.sub_germ(g)?.zip_with(s, |v, _| -v)?,
        (NodeValue::Sample(s), NodeValue::Sample(t)) => s.sub_exact(t)?,
    };
    if d.j_from() > window.from() || d.j_to() < window.to() {
        return Err(GermError::WindowMismatch(format!(
            "sample ball range [{}, {}] does not cover [{}, {}]",
            d.j_from(),
            d.j_to(),
            window.from(),
            window.to()
        )));
    }
    d.with_range(window.from(), window.to())
}

/// A finite upward-directed net with a target and a test battery.
#[derive(Debug, Clone)]
pub struct NetSpec {
    names: Vec<String>,
    values: Vec<NodeValue>,
    /// `leq[a][b]` iff `a <= b`.
    leq: Vec<Vec<bool>>,
    target: NodeValue,
    battery: Vec<(String, PlGerm)>,
}

impl NetSpec {
    /// Nodes in declaration order, generating edges `a < b`. The order is
    /// closed reflexively and transitively, then checked directed.
    pub fn new(
        nodes: Vec<(String, NodeValue)>,
        edges: &[(String, String)],
        target: NodeValue,
        battery: Vec<(String, PlGerm)>,
    ) -> Result<NetSpec> {
        if nodes.is_empty() {
            return Err(GermError::Invalid("net has no nodes".into()));
        }
        let (names, values): (Vec<String>, Vec<NodeValue>) = nodes.into_iter().unzip();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(GermError::Invalid(format!("duplicate node {n}")));
            }
        }
        let idx = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| GermError::Invalid(format!("unknown node {n}")))
        };
        let k = names.len();
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in edges {
            leq[idx(a)?][idx(b)?] = true;
        }
        for m in 0..k {
            let row = leq[m].clone();
            for r in leq.iter_mut().filter(|r| r[m]) {
                for (x, &y) in r.iter_mut().zip(&row) {
                    *x |= y;
                }
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                if !(0..k).any(|c| leq[a][c] && leq[b][c]) {
                    return Err(GermError::NotDirected(names[a].clone(), names[b].clone()));
                }
            }
        }
        Ok(NetSpec { names, values, leq, target, battery })
    }

    /// The chain `n1 < n2 < ...` on the given values.
    pub fn chain(values: Vec<NodeValue>, target: NodeValue, battery: Vec<(String, PlGerm)>) -> Result<NetSpec> {
        let nodes: Vec<(String, NodeValue)> =
            values.into_iter().enumerate().map(|(i, v)| (format!("n{}", i + 1), v)).collect();
        let edges: Vec<(String, String)> =
            nodes.windows(2).map(|w| (w[0].0.clone(), w[1].0.clone())).collect();
        NetSpec::new(nodes, &edges, target, battery)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[NodeValue] {
        &self.values
    }

    pub fn target(&self) -> &NodeValue {
        &self.target
    }

    pub fn battery(&self) -> &[(String, PlGerm)] {
        &self.battery
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Same order and battery, new node values and target.
    pub fn with_values(&self, values: Vec<NodeValue>, target: NodeValue) -> Result<NetSpec> {
        if values.len() != self.values.len() {
            return Err(GermError::Invalid("node count changed".into()));
        }
        Ok(NetSpec { values, target, ..self.clone() })
    }

    /// Same net, new battery.
    pub fn with_battery(&self, battery: Vec<(String, PlGerm)>) -> NetSpec {
        NetSpec { battery, ..self.clone() }
    }

    fn upper_set(&self, d: usize) -> Vec<usize> {
        (0..self.names.len()).filter(|&e| self.leq[d][e]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestResult {
    /// Every node `d >= d0` has `Λ(f_d - target) < p` on `[j1, horizon]`.
    Converges { d0: String, j1: u64 },
    /// No candidate works; the nodes whose own comparison is not `LT`.
    Fails { failing: Vec<(String, OrderVerdict)>, failing_index: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestOutcome {
    pub test: String,
    pub result: TestResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub tests: Vec<TestOutcome>,
    pub window: GridWindow,
}

impl ConvergenceReport {
    pub fn converges(&self) -> bool {
        self.tests.iter().all(|t| matches!(t.result, TestResult::Converges { .. }))
    }
}

/// Per battery test, the earliest node (largest upper set, then declaration
/// order) from which every later node is within the test.
pub fn converge_check(net: &NetSpec, horizon: u64) -> Result<ConvergenceReport> {
    if net.battery.is_empty() {
        return Err(GermError::EmptyFamily);
    }
    let from = net
        .values
        .iter()
        .map(NodeValue::start)
        .chain(std::iter::once(net.target.start()))
        .chain(net.battery.iter().map(|(_, p)| p.start()))
        .max()
        .expect("nonempty");
    let window = GridWindow::new(from, horizon)
        .map_err(|_| GermError::WindowMismatch(format!("common start {from} exceeds horizon {horizon}")))?;
    for (name, p) in &net.battery {
        let report = validate(&Germ::Pl(p.clone()), &window);
        if !report.is_valid() {
            return Err(GermError::Invalid(format!("battery member {name} is not a valid PL germ")));
        }
    }
    let profiles: Vec<Germ> = net
        .values
        .iter()
        .map(|v| Ok(norm_profile(&difference(v, &net.target, &window)?).germ))
        .collect::<Result<_>>()?;

    let k = net.names.len();
    let mut order: Vec<usize> = (0..k).collect();
    let uppers: Vec<Vec<usize>> = (0..k).map(|d| net.upper_set(d)).collect();
    order.sort_by_key(|&d| (std::cmp::Reverse(uppers[d].len()), d));

    let mut tests = Vec::with_capacity(net.battery.len());
    for (name, p) in &net.battery {
        let p = Germ::Pl(p.clone());
        let verdicts: Vec<OrderVerdict> = profiles
            .iter()
            .map(|l| compare_germwise(l, &p, &window, CompareMode::Auto))
            .collect::<Result<_>>()?;
        let hit = order.iter().find(|&&d| uppers[d].iter().all(|&e| verdicts[e].is_lt()));
        let result = match hit {
            Some(&d) => TestResult::Converges {
                d0: net.names[d].clone(),
                j1: uppers[d].iter().map(|&e| verdicts[e].witness_index).max().expect("reflexive"),
            },
            None => {
                let failing: Vec<(String, OrderVerdict)> = (0..k)
                    .filter(|&e| !verdicts[e].is_lt())
                    .map(|e| (net.names[e].clone(), verdicts[e].clone()))
                    .collect();
                let failing_index = failing[0].1.witness_index;
                TestResult::Fails { failing, failing_index }
            }
        };
        tests.push(TestOutcome { test: name.clone(), result });
    }
    Ok(ConvergenceReport { tests, window })
}

/// A PL germ below every member of `seq` eventually: the diagonal of the
/// members, each first minorized to PL when it is not PL already.
pub fn nonconvergence_witness(seq: &[Germ], horizon: u64) -> Result<PlGerm> {
    if seq.is_empty() {
        return Err(GermError::EmptyFamily);
    }
    let members: Vec<PlGerm> = seq
        .iter()
        .map(|g| match g {
            Germ::Zero => Err(GermError::Invalid("zero germ in sequence".into())),
            Germ::Pl(p) => Ok(p.clone()),
            other => Ok(minorize_to_pl(other, horizon)?.germ),
        })
        .collect::<Result<_>>()?;
    diagonal_below(&Family::Finite(members))
}
