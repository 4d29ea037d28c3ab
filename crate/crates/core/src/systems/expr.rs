use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::series::{CoeffText, Var};

/// Index of a node inside a [`SystemSpec`]; children always precede parents.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(Var),
    Const(BigRational),
    Unknown(usize),
    Add(Vec<NodeId>),
    Mul(Vec<NodeId>),
    Neg(NodeId),
    Pow(NodeId, u32),
    /// `sum_{i >= k} a^i / i!`
    ExpGeq(NodeId, u32),
    Cyc(NodeId),
    /// `sum_{k >= kmin} m^C(k+shift, 2) a^k / k!` where `m` is the mark
    /// node (normally `u`).
    QBinom {
        arg: NodeId,
        mark: NodeId,
        shift: u32,
        kmin: u32,
    },
}

/// Which graph family a system describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Triangle,
    C4,
    Girth(u32),
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::Triangle => write!(f, "triangle"),
            ClassTag::C4 => write!(f, "c4"),
            ClassTag::Girth(k) => write!(f, "girth({k})"),
        }
    }
}

/// A named system `v_i = rhs_i(x, y, u, v)` as a hash-consed expression DAG,
/// plus named output expressions (B and its parts) over the same unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub name: String,
    pub class: ClassTag,
    nodes: Vec<Node>,
    unknowns: Vec<String>,
    rhs: Vec<NodeId>,
    gain: Vec<bool>,
    outputs: BTreeMap<String, NodeId>,
}

impl SystemSpec {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.unknowns.iter().position(|u| u == name)
    }

    pub fn rhs(&self, i: usize) -> NodeId {
        self.rhs[i]
    }

    pub fn rhs_roots(&self) -> &[NodeId] {
        &self.rhs
    }

    pub fn gains_order(&self, i: usize) -> bool {
        self.gain[i]
    }

    pub fn outputs(&self) -> &BTreeMap<String, NodeId> {
        &self.outputs
    }

    pub fn output(&self, name: &str) -> Result<NodeId> {
        self.outputs
            .get(name)
            .copied()
            .ok_or_else(|| Error::System(format!("system {} has no output {name}", self.name)))
    }

    /// Marks every node reachable from `roots`.
    pub fn reachable(&self, roots: &[NodeId]) -> Vec<bool> {
        let mut mark = vec![false; self.nodes.len()];
        for &r in roots {
            mark[r] = true;
        }
        for id in (0..self.nodes.len()).rev() {
            if !mark[id] {
                continue;
            }
            for c in children(&self.nodes[id]) {
                mark[c] = true;
            }
        }
        mark
    }

    /// Unknowns referenced by the right-hand side of unknown `i`.
    pub fn dependencies(&self, i: usize) -> Vec<usize> {
        let mark = self.reachable(&[self.rhs[i]]);
        let mut deps: Vec<usize> = self
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(id, n)| match n {
                Node::Unknown(j) if mark[id] => Some(*j),
                _ => None,
            })
            .collect();
        deps.sort_unstable();
        deps.dedup();
        deps
    }

    /// Sweep order for the fixed-point solver: order-gaining unknowns first,
    /// then the others topologically. Errors if the others contain a cycle.
    pub fn sweep_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).filter(|&i| self.gain[i]).collect();
        let mut done: Vec<bool> = self.gain.clone();
        let deps: Vec<Vec<usize>> = (0..n).map(|i| self.dependencies(i)).collect();
        while order.len() < n {
            let next = (0..n).find(|&i| !done[i] && deps[i].iter().all(|&j| done[j]));
            match next {
                Some(i) => {
                    done[i] = true;
                    order.push(i);
                }
                None => {
                    let stuck: Vec<&str> = (0..n)
                        .filter(|&i| !done[i])
                        .map(|i| self.unknowns[i].as_str())
                        .collect();
                    return Err(Error::System(format!(
                        "dependency cycle without an order-gaining unknown among {stuck:?}"
                    )));
                }
            }
        }
        Ok(order)
    }

    /// Replaces a variable by a constant everywhere, returning a new system.
    pub fn substitute(&self, var: Var, value: &BigRational) -> SystemSpec {
        let mut b = SystemBuilder::new(&self.name, self.class);
        for u in &self.unknowns {
            b.declare(u);
        }
        let mut map = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let id = match node {
                Node::Var(v) if *v == var => b.constant(value.clone()),
                other => {
                    let remapped = remap(other, &map);
                    b.intern(remapped)
                }
            };
            map.push(id);
        }
        for (i, &r) in self.rhs.iter().enumerate() {
            b.set_rhs(i, map[r], self.gain[i]);
        }
        for (name, &id) in &self.outputs {
            b.output(name, map[id]);
        }
        b.finish().expect("substitution preserves well-formedness")
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self.nodes.iter().map(|n| node_json(n, &self.unknowns)).collect();
        let equations: BTreeMap<&str, NodeId> = self
            .unknowns
            .iter()
            .zip(&self.rhs)
            .map(|(u, r)| (u.as_str(), *r))
            .collect();
        let gain: Vec<&str> = self
            .unknowns
            .iter()
            .zip(&self.gain)
            .filter(|(_, g)| **g)
            .map(|(u, _)| u.as_str())
            .collect();
        json!({
            "name": self.name,
            "class": self.class,
            "unknowns": self.unknowns,
            "gain_one_order": gain,
            "nodes": nodes,
            "equations": equations,
            "outputs": self.outputs,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Format(format!("system document: {m}"));
        let name = v["name"].as_str().ok_or_else(|| bad("missing name"))?;
        let class: ClassTag =
            serde_json::from_value(v["class"].clone()).map_err(|e| bad(&e.to_string()))?;
        let mut b = SystemBuilder::new(name, class);
        let unknowns: Vec<String> =
            serde_json::from_value(v["unknowns"].clone()).map_err(|e| bad(&e.to_string()))?;
        for u in &unknowns {
            b.declare(u);
        }
        let nodes = v["nodes"].as_array().ok_or_else(|| bad("missing nodes"))?;
        let mut map = Vec::with_capacity(nodes.len());
        for n in nodes {
            let node = parse_node(n, &unknowns, &map)?;
            map.push(b.intern(node));
        }
        let lookup = |id: &Value| -> Result<NodeId> {
            let i = id.as_u64().ok_or_else(|| bad("node reference"))? as usize;
            map.get(i).copied().ok_or_else(|| bad("dangling node reference"))
        };
        let gain: Vec<String> =
            serde_json::from_value(v["gain_one_order"].clone()).map_err(|e| bad(&e.to_string()))?;
        let eqs = v["equations"].as_object().ok_or_else(|| bad("missing equations"))?;
        for (i, u) in unknowns.iter().enumerate() {
            let r = eqs.get(u).ok_or_else(|| bad(&format!("no equation for {u}")))?;
            b.set_rhs(i, lookup(r)?, gain.contains(u));
        }
        if let Some(outs) = v["outputs"].as_object() {
            for (k, id) in outs {
                b.output(k, lookup(id)?);
            }
        }
        b.finish()
    }
}

fn children(n: &Node) -> Vec<NodeId> {
    match n {
        Node::Var(_) | Node::Const(_) | Node::Unknown(_) => vec![],
        Node::Add(v) | Node::Mul(v) => v.clone(),
        Node::Neg(a) | Node::Pow(a, _) | Node::ExpGeq(a, _) | Node::Cyc(a) => vec![*a],
        Node::QBinom { arg, mark, .. } => vec![*arg, *mark],
    }
}

fn remap(n: &Node, map: &[NodeId]) -> Node {
    match n {
        Node::Var(_) | Node::Const(_) | Node::Unknown(_) => n.clone(),
        Node::Add(v) => Node::Add(v.iter().map(|&c| map[c]).collect()),
        Node::Mul(v) => Node::Mul(v.iter().map(|&c| map[c]).collect()),
        Node::Neg(a) => Node::Neg(map[*a]),
        Node::Pow(a, e) => Node::Pow(map[*a], *e),
        Node::ExpGeq(a, k) => Node::ExpGeq(map[*a], *k),
        Node::Cyc(a) => Node::Cyc(map[*a]),
        Node::QBinom {
            arg,
            mark,
            shift,
            kmin,
        } => Node::QBinom {
            arg: map[*arg],
            mark: map[*mark],
            shift: *shift,
            kmin: *kmin,
        },
    }
}

fn node_json(n: &Node, unknowns: &[String]) -> Value {
    match n {
        Node::Var(Var::X) => json!(["x"]),
        Node::Var(Var::Y) => json!(["y"]),
        Node::Var(Var::U) => json!(["u"]),
        Node::Const(q) => json!(["const", q.to_text()]),
        Node::Unknown(i) => json!(["unknown", unknowns[*i]]),
        Node::Add(v) => json!(std::iter::once(json!("add")).chain(v.iter().map(|c| json!(c))).collect::<Vec<_>>()),
        Node::Mul(v) => json!(std::iter::once(json!("mul")).chain(v.iter().map(|c| json!(c))).collect::<Vec<_>>()),
        Node::Neg(a) => json!(["neg", a]),
        Node::Pow(a, e) => json!(["pow", a, e]),
        Node::ExpGeq(a, k) => json!(["exp_geq", a, k]),
        Node::Cyc(a) => json!(["cyc", a]),
        Node::QBinom {
            arg,
            mark,
            shift,
            kmin,
        } => json!(["qbinom", arg, mark, shift, kmin]),
    }
}

fn parse_node(v: &Value, unknowns: &[String], map: &[NodeId]) -> Result<Node> {
    let bad = || Error::Format(format!("bad node {v}"));
    let arr = v.as_array().ok_or_else(bad)?;
    let op = arr.first().and_then(Value::as_str).ok_or_else(bad)?;
    let id = |k: usize| -> Result<NodeId> {
        let i = arr.get(k).and_then(Value::as_u64).ok_or_else(bad)? as usize;
        map.get(i).copied().ok_or_else(bad)
    };
    let num = |k: usize| -> Result<u32> {
        arr.get(k).and_then(Value::as_u64).map(|n| n as u32).ok_or_else(bad)
    };
    Ok(match op {
        "x" => Node::Var(Var::X),
        "y" => Node::Var(Var::Y),
        "u" => Node::Var(Var::U),
        "const" => Node::Const(BigRational::from_text(arr.get(1).and_then(Value::as_str).ok_or_else(bad)?)?),
        "unknown" => {
            let name = arr.get(1).and_then(Value::as_str).ok_or_else(bad)?;
            Node::Unknown(unknowns.iter().position(|u| u == name).ok_or_else(bad)?)
        }
        "add" | "mul" => {
            let ids = (1..arr.len()).map(id).collect::<Result<Vec<_>>>()?;
            if op == "add" {
                Node::Add(ids)
            } else {
                Node::Mul(ids)
            }
        }
        "neg" => Node::Neg(id(1)?),
        "pow" => Node::Pow(id(1)?, num(2)?),
        "exp_geq" => Node::ExpGeq(id(1)?, num(2)?),
        "cyc" => Node::Cyc(id(1)?),
        "qbinom" => Node::QBinom {
            arg: id(1)?,
            mark: id(2)?,
            shift: num(3)?,
            kmin: num(4)?,
        },
        _ => return Err(bad()),
    })
}

/// Incremental construction of a [`SystemSpec`] with structural sharing.
#[derive(Debug)]
pub struct SystemBuilder {
    name: String,
    class: ClassTag,
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
    unknowns: Vec<String>,
    rhs: Vec<Option<(NodeId, bool)>>,
    outputs: BTreeMap<String, NodeId>,
}

impl SystemBuilder {
    pub fn new(name: &str, class: ClassTag) -> Self {
        SystemBuilder {
            name: name.to_string(),
            class,
            nodes: Vec::new(),
            index: HashMap::new(),
            unknowns: Vec::new(),
            rhs: Vec::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn intern(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(n.clone());
        self.index.insert(n, id);
        id
    }

    /// Declares an unknown and returns the node referring to it.
    pub fn unknown(&mut self, name: &str) -> NodeId {
        let i = self.declare(name);
        self.intern(Node::Unknown(i))
    }

    fn declare(&mut self, name: &str) -> usize {
        match self.unknowns.iter().position(|u| u == name) {
            Some(i) => i,
            None => {
                self.unknowns.push(name.to_string());
                self.rhs.push(None);
                self.unknowns.len() - 1
            }
        }
    }

    pub fn set_rhs(&mut self, i: usize, rhs: NodeId, gains_order: bool) {
        self.rhs[i] = Some((rhs, gains_order));
    }

    pub fn equation(&mut self, name: &str, rhs: NodeId, gains_order: bool) {
        let i = self
            .unknowns
            .iter()
            .position(|u| u == name)
            .unwrap_or_else(|| panic!("undeclared unknown {name}"));
        self.set_rhs(i, rhs, gains_order);
    }

    pub fn output(&mut self, name: &str, id: NodeId) {
        self.outputs.insert(name.to_string(), id);
    }

    pub fn x(&mut self) -> NodeId {
        self.intern(Node::Var(Var::X))
    }

    pub fn y(&mut self) -> NodeId {
        self.intern(Node::Var(Var::Y))
    }

    pub fn u(&mut self) -> NodeId {
        self.intern(Node::Var(Var::U))
    }

    pub fn constant(&mut self, q: BigRational) -> NodeId {
        self.intern(Node::Const(q))
    }

    pub fn int(&mut self, n: i64) -> NodeId {
        self.constant(BigRational::from_integer(n.into()))
    }

    pub fn frac(&mut self, n: i64, d: i64) -> NodeId {
        self.constant(BigRational::new(n.into(), d.into()))
    }

    fn const_value(&self, id: NodeId) -> Option<&BigRational> {
        match &self.nodes[id] {
            Node::Const(q) => Some(q),
            _ => None,
        }
    }

    pub fn add(&mut self, terms: &[NodeId]) -> NodeId {
        let mut kept: Vec<NodeId> = Vec::new();
        for &t in terms {
            match &self.nodes[t] {
                Node::Const(q) if num_traits::Zero::is_zero(q) => {}
                Node::Add(inner) => kept.extend(inner.iter().copied()),
                _ => kept.push(t),
            }
        }
        match kept.len() {
            0 => self.int(0),
            1 => kept[0],
            _ => self.intern(Node::Add(kept)),
        }
    }

    pub fn mul(&mut self, factors: &[NodeId]) -> NodeId {
        let mut kept: Vec<NodeId> = Vec::new();
        for &f in factors {
            if let Some(q) = self.const_value(f) {
                if num_traits::Zero::is_zero(q) {
                    return self.int(0);
                }
                if num_traits::One::is_one(q) {
                    continue;
                }
            }
            match &self.nodes[f] {
                Node::Mul(inner) => kept.extend(inner.iter().copied()),
                _ => kept.push(f),
            }
        }
        match kept.len() {
            0 => self.int(1),
            1 => kept[0],
            _ => self.intern(Node::Mul(kept)),
        }
    }

    pub fn neg(&mut self, a: NodeId) -> NodeId {
        self.intern(Node::Neg(a))
    }

    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let nb = self.neg(b);
        self.add(&[a, nb])
    }

    pub fn pow(&mut self, a: NodeId, e: u32) -> NodeId {
        match e {
            0 => self.int(1),
            1 => a,
            _ => self.intern(Node::Pow(a, e)),
        }
    }

    pub fn exp_geq(&mut self, a: NodeId, k: u32) -> NodeId {
        self.intern(Node::ExpGeq(a, k))
    }

    pub fn exp(&mut self, a: NodeId) -> NodeId {
        self.exp_geq(a, 0)
    }

    pub fn cyc(&mut self, a: NodeId) -> NodeId {
        self.intern(Node::Cyc(a))
    }

    pub fn qbinom(&mut self, arg: NodeId, shift: u32, kmin: u32) -> NodeId {
        let mark = self.u();
        self.intern(Node::QBinom {
            arg,
            mark,
            shift,
            kmin,
        })
    }

    pub fn finish(self) -> Result<SystemSpec> {
        let mut rhs = Vec::with_capacity(self.rhs.len());
        let mut gain = Vec::with_capacity(self.rhs.len());
        for (i, r) in self.rhs.iter().enumerate() {
            let (id, g) = r.ok_or_else(|| {
                Error::System(format!("unknown {} has no equation", self.unknowns[i]))
            })?;
            rhs.push(id);
            gain.push(g);
        }
        let spec = SystemSpec {
            name: self.name,
            class: self.class,
            nodes: self.nodes,
            unknowns: self.unknowns,
            rhs,
            gain,
            outputs: self.outputs,
        };
        spec.sweep_order()?;
        Ok(spec)
    }
}
