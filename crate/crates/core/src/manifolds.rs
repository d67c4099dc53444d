//! Formal closed oriented manifold expressions.
//!
//! Four-manifolds are expression trees over a generator set with known Euler
//! characteristic and signature; all partition-function formulas in this
//! crate consume only (χ, σ), so no triangulations are ever needed. Surfaces
//! are lists of genera.
//!
//! Grammar: generators `S4, CP2, S2xS2, K3, T4`, prefix `-` for orientation
//! reversal, infix `#` (connected sum), `+` (disjoint union), `n*M` for the
//! n-fold connected sum, parentheses. Surfaces: `Sigma(g)` combined with `+`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("manifold parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    /// χ ≢ σ (mod 2) would contradict closed oriented 4-manifold topology;
    /// unreachable for expressions built from the generator table.
    #[error("internal parity violation: chi = {chi}, sigma = {sigma}")]
    ParityViolation { chi: i64, sigma: i64 },
}

/// The closed oriented generators with their (χ, σ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator4 {
    S4,
    Cp2,
    Cp2Bar,
    S2xS2,
    K3,
    K3Bar,
    T4,
}

impl Generator4 {
    pub fn chi_sigma(self) -> (i64, i64) {
        match self {
            Generator4::S4 => (2, 0),
            Generator4::Cp2 => (3, 1),
            Generator4::Cp2Bar => (3, -1),
            Generator4::S2xS2 => (4, 0),
            // K3 with its complex orientation: b2+ = 3, b2- = 19.
            Generator4::K3 => (24, -16),
            Generator4::K3Bar => (24, 16),
            Generator4::T4 => (0, 0),
        }
    }

    pub fn reversed(self) -> Generator4 {
        match self {
            Generator4::Cp2 => Generator4::Cp2Bar,
            Generator4::Cp2Bar => Generator4::Cp2,
            Generator4::K3 => Generator4::K3Bar,
            Generator4::K3Bar => Generator4::K3,
            // σ = 0 generators admit orientation-reversing self-diffeomorphisms.
            g => g,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator4::S4 => "S4",
            Generator4::Cp2 => "CP2",
            Generator4::Cp2Bar => "-CP2",
            Generator4::S2xS2 => "S2xS2",
            Generator4::K3 => "K3",
            Generator4::K3Bar => "-K3",
            Generator4::T4 => "T4",
        }
    }
}

/// Expression tree before normalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Expr4 {
    Generator(Generator4),
    /// Connected sum of ≥ 1 connected operands.
    ConnectedSum(Vec<Expr4>),
    /// Disjoint union of ≥ 1 operands.
    DisjointUnion(Vec<Expr4>),
    Reverse(Box<Expr4>),
}

/// A well-formed closed oriented 4-manifold expression with cached
/// invariants. Orientation reversal is normalized into the generators and
/// commutative operands are sorted, so equal manifolds compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Manifold4 {
    expr: Expr4,
    chi: i64,
    sigma: i64,
    connected: bool,
}

impl Manifold4 {
    pub fn generator(g: Generator4) -> Self {
        let (chi, sigma) = g.chi_sigma();
        Self {
            expr: Expr4::Generator(g),
            chi,
            sigma,
            connected: true,
        }
    }

    /// Builds and validates an expression tree. Connected sums of
    /// disconnected operands are rejected.
    pub fn new(expr: Expr4) -> Result<Self, ManifoldError> {
        let normalized = normalize(expr, false)?;
        let (chi, sigma, connected) = evaluate(&normalized)?;
        if (chi - sigma) % 2 != 0 {
            return Err(ManifoldError::ParityViolation { chi, sigma });
        }
        Ok(Self {
            expr: normalized,
            chi,
            sigma,
            connected,
        })
    }

    pub fn connected_sum(&self, other: &Manifold4) -> Result<Manifold4, ManifoldError> {
        Manifold4::new(Expr4::ConnectedSum(vec![self.expr.clone(), other.expr.clone()]))
    }

    pub fn disjoint_union(&self, other: &Manifold4) -> Manifold4 {
        Manifold4::new(Expr4::DisjointUnion(vec![self.expr.clone(), other.expr.clone()]))
            .expect("disjoint union of valid manifolds is valid")
    }

    pub fn reverse(&self) -> Manifold4 {
        Manifold4::new(Expr4::Reverse(Box::new(self.expr.clone())))
            .expect("orientation reversal of a valid manifold is valid")
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn chi_sigma(&self) -> (i64, i64) {
        (self.chi, self.sigma)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn expr(&self) -> &Expr4 {
        &self.expr
    }

    /// The class in SKK_4 ≅ Z×Z coordinatized by (χ, σ) with χ ≡ σ (mod 2),
    /// together with the second-factor projection (σ−χ)/2.
    pub fn skk_class(&self) -> SkkClass4 {
        SkkClass4 {
            chi: self.chi,
            sigma: self.sigma,
            second_factor: (self.sigma - self.chi) / 2,
        }
    }
}

impl fmt::Display for Manifold4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rec(e: &Expr4, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr4::Generator(g) => write!(f, "{}", g.name()),
                Expr4::ConnectedSum(ops) => {
                    for (i, op) in ops.iter().enumerate() {
                        if i > 0 {
                            write!(f, " # ")?;
                        }
                        rec(op, f)?;
                    }
                    Ok(())
                }
                Expr4::DisjointUnion(ops) => {
                    for (i, op) in ops.iter().enumerate() {
                        if i > 0 {
                            write!(f, " + ")?;
                        }
                        if matches!(op, Expr4::ConnectedSum(_)) {
                            write!(f, "(")?;
                            rec(op, f)?;
                            write!(f, ")")?;
                        } else {
                            rec(op, f)?;
                        }
                    }
                    Ok(())
                }
                Expr4::Reverse(inner) => {
                    write!(f, "-(")?;
                    rec(inner, f)?;
                    write!(f, ")")
                }
            }
        }
        rec(&self.expr, f)
    }
}

impl fmt::Debug for Manifold4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (chi={}, sigma={})", self.chi, self.sigma)
    }
}

/// Pushes Reverse to the generators, flattens nested sums/unions, sorts
/// commutative operands.
fn normalize(expr: Expr4, reverse: bool) -> Result<Expr4, ManifoldError> {
    Ok(match expr {
        Expr4::Generator(g) => Expr4::Generator(if reverse { g.reversed() } else { g }),
        Expr4::Reverse(inner) => normalize(*inner, !reverse)?,
        Expr4::ConnectedSum(ops) => {
            if ops.is_empty() {
                return Err(ManifoldError::MalformedExpression(
                    "empty connected sum".into(),
                ));
            }
            let mut flat = Vec::new();
            for op in ops {
                match normalize(op, reverse)? {
                    Expr4::ConnectedSum(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.sort();
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Expr4::ConnectedSum(flat)
            }
        }
        Expr4::DisjointUnion(ops) => {
            if ops.is_empty() {
                return Err(ManifoldError::MalformedExpression(
                    "empty disjoint union".into(),
                ));
            }
            let mut flat = Vec::new();
            for op in ops {
                match normalize(op, reverse)? {
                    Expr4::DisjointUnion(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.sort();
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Expr4::DisjointUnion(flat)
            }
        }
    })
}

/// (χ, σ, connected). χ is additive on disjoint unions; on connected sums of
/// n connected pieces χ = Σχ_i − 2(n−1) while σ stays additive.
fn evaluate(expr: &Expr4) -> Result<(i64, i64, bool), ManifoldError> {
    match expr {
        Expr4::Generator(g) => {
            let (c, s) = g.chi_sigma();
            Ok((c, s, true))
        }
        Expr4::Reverse(_) => unreachable!("normalization removes Reverse nodes"),
        Expr4::ConnectedSum(ops) => {
            let mut chi = 0i64;
            let mut sigma = 0i64;
            for op in ops {
                let (c, s, conn) = evaluate(op)?;
                if !conn {
                    return Err(ManifoldError::MalformedExpression(
                        "connected sum of a disconnected manifold".into(),
                    ));
                }
                chi += c;
                sigma += s;
            }
            chi -= 2 * (ops.len() as i64 - 1);
            Ok((chi, sigma, true))
        }
        Expr4::DisjointUnion(ops) => {
            let mut chi = 0i64;
            let mut sigma = 0i64;
            for op in ops {
                let (c, s, _) = evaluate(op)?;
                chi += c;
                sigma += s;
            }
            Ok((chi, sigma, false))
        }
    }
}

/// An element of SKK_4 in (χ, σ) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkkClass4 {
    pub chi: i64,
    pub sigma: i64,
    /// (σ − χ)/2, the projection onto the second Z factor.
    pub second_factor: i64,
}

/// A closed oriented surface: one genus per connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surface {
    genera: Vec<u64>,
}

impl Surface {
    pub fn closed_of_genus(g: u64) -> Self {
        Self { genera: vec![g] }
    }

    pub fn disjoint_union(&self, other: &Surface) -> Surface {
        let mut genera = self.genera.clone();
        genera.extend_from_slice(&other.genera);
        genera.sort_unstable();
        Surface { genera }
    }

    /// χ = Σ (2 − 2g_i); always even.
    pub fn chi(&self) -> i64 {
        self.genera.iter().map(|&g| 2 - 2 * g as i64).sum()
    }

    pub fn genera(&self) -> &[u64] {
        &self.genera
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.genera.iter().map(|g| format!("Sigma({g})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Result of parsing a manifold expression: a 4-manifold or a surface.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedManifold {
    FourManifold(Manifold4),
    Surface(Surface),
}

pub fn parse_manifold(text: &str) -> Result<ParsedManifold, ManifoldError> {
    Parser::new(text).parse_top()
}

/// Parses text that must denote a 4-manifold.
pub fn parse_manifold4(text: &str) -> Result<Manifold4, ManifoldError> {
    match parse_manifold(text)? {
        ParsedManifold::FourManifold(m) => Ok(m),
        ParsedManifold::Surface(_) => Err(ManifoldError::Parse {
            position: 0,
            message: "expected a 4-manifold, found a surface expression".into(),
        }),
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Four(Expr4),
    Surf(Surface),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ManifoldError> {
        Err(ManifoldError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_top(&mut self) -> Result<ParsedManifold, ManifoldError> {
        let node = self.parse_union()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("unexpected trailing input");
        }
        match node {
            Node::Four(e) => Ok(ParsedManifold::FourManifold(Manifold4::new(e)?)),
            Node::Surf(s) => Ok(ParsedManifold::Surface(s)),
        }
    }

    fn parse_union(&mut self) -> Result<Node, ManifoldError> {
        let mut node = self.parse_sum()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.parse_sum()?;
            node = match (node, rhs) {
                (Node::Four(a), Node::Four(b)) => Node::Four(Expr4::DisjointUnion(vec![a, b])),
                (Node::Surf(a), Node::Surf(b)) => Node::Surf(a.disjoint_union(&b)),
                _ => return self.err("cannot mix surfaces and 4-manifolds"),
            };
        }
        Ok(node)
    }

    fn parse_sum(&mut self) -> Result<Node, ManifoldError> {
        let mut node = self.parse_factor()?;
        while self.peek() == Some(b'#') {
            self.pos += 1;
            let rhs = self.parse_factor()?;
            node = match (node, rhs) {
                (Node::Four(a), Node::Four(b)) => Node::Four(Expr4::ConnectedSum(vec![a, b])),
                _ => return self.err("connected sum is only defined for 4-manifolds here"),
            };
        }
        Ok(node)
    }

    fn parse_factor(&mut self) -> Result<Node, ManifoldError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                match self.parse_factor()? {
                    Node::Four(e) => Ok(Node::Four(Expr4::Reverse(Box::new(e)))),
                    Node::Surf(_) => self.err("orientation reversal applies to 4-manifolds only"),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_integer()?;
                if self.peek() != Some(b'*') {
                    return self.err("expected '*' after repetition count");
                }
                self.pos += 1;
                if n == 0 {
                    return self.err("repetition count must be at least 1");
                }
                // The n-fold connected sum is materialized as n operands.
                if n > 4096 {
                    return self.err("repetition count must be at most 4096");
                }
                match self.parse_factor()? {
                    Node::Four(e) => {
                        Ok(Node::Four(Expr4::ConnectedSum(vec![e; n as usize])))
                    }
                    Node::Surf(_) => self.err("n*M applies to 4-manifolds only"),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_union()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => self.parse_name(),
            _ => self.err("expected a manifold expression"),
        }
    }

    fn parse_integer(&mut self) -> Result<u64, ManifoldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .or_else(|e| self.err(format!("bad integer: {e}")))
    }

    fn parse_name(&mut self) -> Result<Node, ManifoldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        match name {
            "S4" => Ok(Node::Four(Expr4::Generator(Generator4::S4))),
            "CP2" => Ok(Node::Four(Expr4::Generator(Generator4::Cp2))),
            "S2xS2" => Ok(Node::Four(Expr4::Generator(Generator4::S2xS2))),
            "K3" => Ok(Node::Four(Expr4::Generator(Generator4::K3))),
            "T4" => Ok(Node::Four(Expr4::Generator(Generator4::T4))),
            "Sigma" => {
                if self.peek() != Some(b'(') {
                    return self.err("expected '(' after Sigma");
                }
                self.pos += 1;
                let g = self.parse_integer()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')' after genus");
                }
                self.pos += 1;
                Ok(Node::Surf(Surface::closed_of_genus(g)))
            }
            _ => {
                self.pos = start;
                self.err(format!("unknown generator '{name}'"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> Manifold4 {
        parse_manifold4(text).unwrap()
    }

    #[test]
    fn generator_invariants() {
        assert_eq!(m("S4").chi_sigma(), (2, 0));
        assert_eq!(m("CP2").chi_sigma(), (3, 1));
        assert_eq!(m("S2xS2").chi_sigma(), (4, 0));
        assert_eq!(m("K3").chi_sigma(), (24, -16));
        assert_eq!(m("T4").chi_sigma(), (0, 0));
    }

    #[test]
    fn connected_sum_formula() {
        assert_eq!(m("CP2 # -CP2").chi_sigma(), (4, 0));
        // CP2 # 3*K3: χ = 3 + 3·24 − 2·3 = 69, σ = 1 − 48 = −47.
        assert_eq!(m("CP2 # 3*K3").chi_sigma(), (69, -47));
    }

    #[test]
    fn disjoint_union_additivity() {
        assert_eq!(m("S4 + S4").chi_sigma(), (4, 0));
        assert!(!m("S4 + S4").is_connected());
    }

    #[test]
    fn reversal() {
        assert_eq!(m("-CP2").expr(), &Expr4::Generator(Generator4::Cp2Bar));
        let k3 = m("K3");
        assert_eq!(k3.reverse().chi_sigma(), (24, 16));
        assert_eq!(k3.reverse().skk_class().sigma, -k3.skk_class().sigma);
        assert_eq!(k3.reverse().chi(), k3.chi());
    }

    #[test]
    fn skk_second_factor() {
        assert_eq!(m("S4").skk_class().second_factor, -1);
        assert_eq!(m("K3").skk_class().second_factor, -20);
        assert_eq!(m("T4").skk_class().second_factor, 0);
    }

    #[test]
    fn normalization_sorts_commutative_operands() {
        assert_eq!(m("CP2 # S4"), m("S4 # CP2"));
        assert_eq!(m("K3 + S4 + CP2"), m("CP2 + K3 + S4"));
        assert_ne!(m("CP2"), m("-CP2"));
    }

    #[test]
    fn connected_sum_of_union_is_malformed() {
        let a = m("S4 + S4");
        let b = m("CP2");
        assert!(a.connected_sum(&b).is_err());
        assert!(matches!(
            parse_manifold4("(S4 + S4) # CP2"),
            Err(ManifoldError::MalformedExpression(_))
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_manifold("S4 # # K3") {
            Err(ManifoldError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_manifold("RP4").is_err());
        assert!(parse_manifold("0*K3").is_err());
        assert!(parse_manifold("S4 + Sigma(1)").is_err());
    }

    #[test]
    fn surfaces() {
        let s = parse_manifold("Sigma(2) + Sigma(0)").unwrap();
        match s {
            ParsedManifold::Surface(s) => {
                assert_eq!(s.chi(), -2 + 2);
                assert_eq!(s.genera(), &[0, 2]);
            }
            _ => panic!("expected surface"),
        }
        assert_eq!(Surface::closed_of_genus(1).chi(), 0);
        assert_eq!(Surface::closed_of_genus(5).chi(), -8);
    }

    #[test]
    fn parity_always_holds() {
        for text in ["S4", "CP2 # CP2", "K3 + T4", "5*CP2 # -K3", "-(CP2 # K3) + S2xS2"] {
            let man = m(text);
            assert_eq!((man.chi() - man.sigma()).rem_euclid(2), 0, "{text}");
        }
    }

    #[test]
    fn second_factor_projection_is_onto() {
        // (σ−χ)/2 is additive under disjoint union; ±1 are realized by S4
        // and by T4 # T4 (χ = −2), so every integer is hit.
        assert_eq!(m("S4").skk_class().second_factor, -1);
        assert_eq!(m("T4 # T4").skk_class().second_factor, 1);
        assert_eq!(m("T4").skk_class().second_factor, 0);
        let five = m("T4 # T4 + T4 # T4 + T4 # T4 + T4 # T4 + T4 # T4");
        assert_eq!(five.skk_class().second_factor, 5);
        let minus_three = m("S4 + S4 + S4");
        assert_eq!(minus_three.skk_class().second_factor, -3);
    }
}
