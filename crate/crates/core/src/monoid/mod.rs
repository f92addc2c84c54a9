//! Finitely generated monoids behind one interface.
//!
//! Four backends are supported: complete rewriting systems, transformation
//! monoids (maps on `{0..n-1}` composed left to right), multiplication
//! tables (a semigroup table gets an identity adjoined), and direct products.
//! Every monoid carries an ordered, named generating set; word length over
//! it is the `l_A` used throughout the crate.

mod ball;
pub mod builtin;
mod finite;
mod table;

use std::fmt;

use thiserror::Error;

use crate::rewrite::{Completeness, RewriteError, RewritingSystem, Word};

pub use ball::{Ball, Enumeration, LengthedElement, Side};
pub use finite::FiniteMonoid;
pub use table::{associative_tables, SemigroupTable};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("element does not belong to this {0} monoid")]
    BackendMismatch(&'static str),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("rewriting system is not confluent: peak {peak} reduces to {left} and {right}")]
    NotConfluent { peak: String, left: String, right: String },
    #[error("transformation generator {name:?} has image {image} outside 0..{degree}")]
    ImageOutOfRange { name: String, image: usize, degree: usize },
    #[error("transformation generator {name:?} has {got} images, expected {degree}")]
    WrongDegree { name: String, got: usize, degree: usize },
    #[error("table is not square or refers to an element outside 0..{0}")]
    MalformedTable(usize),
    #[error("table is not associative: ({x}{y}){z} != {x}({y}{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("declared identity {0:?} is not a two-sided identity")]
    NotIdentity(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("ball exceeds the element cap of {cap}; raise it with --cap")]
    CapExceeded { cap: usize },
    #[error("monoid is not finite within the element cap of {cap}; raise it with --cap")]
    NotFiniteWithinCap { cap: usize },
}

/// A monoid element in its backend's canonical representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Normal-form word of a rewriting backend.
    Word(Word),
    /// Image array of a transformation.
    Map(Vec<u32>),
    /// Row index of a table backend.
    Index(usize),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    fn kind(&self) -> &'static str {
        match self {
            Element::Word(_) => "rewriting",
            Element::Map(_) => "transformation",
            Element::Index(_) => "table",
            Element::Pair(..) => "product",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBackend {
    pub names: Vec<String>,
    /// Row-major `n * n` products.
    pub table: Vec<usize>,
    pub identity: usize,
    /// Whether the identity row was adjoined at load.
    pub adjoined_identity: bool,
}

impl TableBackend {
    fn n(&self) -> usize {
        self.names.len()
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n() + y]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Rewriting(RewritingSystem),
    Transformation { degree: usize },
    Table(TableBackend),
    Product(Box<Monoid>, Box<Monoid>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    backend: Backend,
    generators: Vec<Generator>,
    identity: Element,
}

impl Monoid {
    /// Monoid presented by a rewriting system; rejected unless the system is
    /// complete. Generators are the alphabet letters in declared order.
    pub fn rewriting(rs: RewritingSystem) -> Result<Self, MonoidError> {
        let rs = if rs.is_complete() { rs } else { rs.verified() };
        if let Completeness::FailedConfluence { peak, left_nf, right_nf } = rs.completeness() {
            let a = rs.alphabet();
            return Err(MonoidError::NotConfluent {
                peak: a.render(peak),
                left: a.render(left_nf),
                right: a.render(right_nf),
            });
        }
        let generators = (0..rs.alphabet().len())
            .map(|i| Generator {
                name: rs.alphabet().symbol(i as u8).to_string(),
                element: Element::Word(rs.normalize_unchecked(&[i as u8])),
            })
            .collect();
        Ok(Monoid { backend: Backend::Rewriting(rs), generators, identity: Element::Word(Vec::new()) })
    }

    /// Free monoid on the given symbols (no relations).
    pub fn free(symbols: &[&str]) -> Result<Self, MonoidError> {
        Monoid::rewriting(RewritingSystem::from_strs(symbols, &[])?)
    }

    pub fn transformation(degree: usize, generators: Vec<(String, Vec<usize>)>) -> Result<Self, MonoidError> {
        let mut gens = Vec::with_capacity(generators.len());
        for (name, images) in generators {
            if images.len() != degree {
                return Err(MonoidError::WrongDegree { name, got: images.len(), degree });
            }
            if let Some(&image) = images.iter().find(|&&i| i >= degree) {
                return Err(MonoidError::ImageOutOfRange { name, image, degree });
            }
            gens.push(Generator { name, element: Element::Map(images.into_iter().map(|i| i as u32).collect()) });
        }
        Ok(Monoid {
            backend: Backend::Transformation { degree },
            generators: gens,
            identity: Element::Map((0..degree as u32).collect()),
        })
    }

    /// Table monoid. Without a declared identity, a fresh identity named `1`
    /// (primed until unused) is adjoined as an extra row and column.
    /// Associativity is checked exhaustively.
    pub fn table(
        names: Vec<String>,
        rows: Vec<Vec<usize>>,
        identity: Option<usize>,
        generators: Vec<usize>,
    ) -> Result<Self, MonoidError> {
        let n = names.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(MonoidError::MalformedTable(n));
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(MonoidError::MalformedTable(n));
        }
        let sg =
            SemigroupTable::new(n, rows.iter().flatten().copied().collect()).ok_or(MonoidError::MalformedTable(n))?;
        if let Some((x, y, z)) = sg.associativity_violation() {
            return Err(MonoidError::NotAssociative { x: names[x].clone(), y: names[y].clone(), z: names[z].clone() });
        }
        let backend = match identity {
            Some(e) => {
                if e >= n || (0..n).any(|x| sg.mul(e, x) != x || sg.mul(x, e) != x) {
                    return Err(MonoidError::NotIdentity(names.get(e).cloned().unwrap_or_default()));
                }
                TableBackend { names, table: sg.into_table(), identity: e, adjoined_identity: false }
            }
            None => {
                let mut name = "1".to_string();
                while names.contains(&name) {
                    name.push('\'');
                }
                let m = n + 1;
                let mut table = vec![0; m * m];
                for x in 0..m {
                    for y in 0..m {
                        table[x * m + y] = if x == n {
                            y
                        } else if y == n {
                            x
                        } else {
                            sg.mul(x, y)
                        };
                    }
                }
                let mut names = names;
                names.push(name);
                TableBackend { names, table, identity: n, adjoined_identity: true }
            }
        };
        let generators = generators
            .into_iter()
            .map(|g| Generator { name: backend.names[g].clone(), element: Element::Index(g) })
            .collect();
        let identity = Element::Index(backend.identity);
        Ok(Monoid { backend: Backend::Table(backend), generators, identity })
    }

    /// Direct product with componentwise multiplication, generated by
    /// `{(a,1) : a ∈ A}` followed by `{(1,b) : b ∈ B}`.
    pub fn direct_product(m1: &Monoid, m2: &Monoid) -> Monoid {
        let mut generators = Vec::new();
        for g in &m1.generators {
            let el = Element::pair(g.element.clone(), m2.identity.clone());
            generators.push(Generator {
                name: format!("({},{})", m1.render(&g.element), m2.render(&m2.identity)),
                element: el,
            });
        }
        for g in &m2.generators {
            let el = Element::pair(m1.identity.clone(), g.element.clone());
            generators.push(Generator {
                name: format!("({},{})", m1.render(&m1.identity), m2.render(&g.element)),
                element: el,
            });
        }
        Monoid {
            identity: Element::pair(m1.identity.clone(), m2.identity.clone()),
            backend: Backend::Product(Box::new(m1.clone()), Box::new(m2.clone())),
            generators,
        }
    }

    /// Same monoid with a different generating set. The elements must belong
    /// to this monoid; whether they generate it is the caller's concern.
    pub fn with_generators(&self, generators: Vec<Generator>) -> Result<Monoid, MonoidError> {
        for g in &generators {
            self.check(&g.element)?;
        }
        Ok(Monoid { backend: self.backend.clone(), generators, identity: self.identity.clone() })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn kind(&self) -> &'static str {
        match self.backend {
            Backend::Rewriting(_) => "rewriting",
            Backend::Transformation { .. } => "transformation",
            Backend::Table(_) => "table",
            Backend::Product(..) => "product",
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn identity(&self) -> &Element {
        &self.identity
    }

    /// Verifies that `x` is a canonical element of this monoid.
    pub fn check(&self, x: &Element) -> Result<(), MonoidError> {
        let ok = match (&self.backend, x) {
            (Backend::Rewriting(rs), Element::Word(w)) => {
                rs.alphabet().check(w).is_ok() && rs.normalize_unchecked(w) == *w
            }
            (Backend::Transformation { degree }, Element::Map(m)) => {
                m.len() == *degree && m.iter().all(|&i| (i as usize) < *degree)
            }
            (Backend::Table(t), Element::Index(i)) => *i < t.n(),
            (Backend::Product(a, b), Element::Pair(x, y)) => {
                return a.check(x).and_then(|_| b.check(y));
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(MonoidError::BackendMismatch(self.kind()))
        }
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, MonoidError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of two elements already known to belong to this monoid.
    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        match (&self.backend, x, y) {
            (Backend::Rewriting(rs), Element::Word(a), Element::Word(b)) => {
                if a.is_empty() {
                    return Element::Word(b.clone());
                }
                if b.is_empty() {
                    return Element::Word(a.clone());
                }
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                if rs.rules().is_empty() {
                    Element::Word(w)
                } else {
                    Element::Word(rs.normalize_unchecked(&w))
                }
            }
            // apply x first, then y
            (Backend::Transformation { .. }, Element::Map(a), Element::Map(b)) => {
                Element::Map(a.iter().map(|&i| b[i as usize]).collect())
            }
            (Backend::Table(t), Element::Index(a), Element::Index(b)) => Element::Index(t.mul(*a, *b)),
            (Backend::Product(m1, m2), Element::Pair(a1, a2), Element::Pair(b1, b2)) => {
                Element::pair(m1.mul(a1, b1), m2.mul(a2, b2))
            }
            _ => panic!("{} element passed to {} monoid", x.kind(), self.kind()),
        }
    }

    /// Evaluates a word over the generator indices.
    pub fn evaluate(&self, word: &[usize]) -> Element {
        word.iter().fold(self.identity.clone(), |acc, &g| self.mul(&acc, &self.generators[g].element))
    }

    pub fn render(&self, x: &Element) -> String {
        match (&self.backend, x) {
            (Backend::Rewriting(rs), Element::Word(w)) => rs.alphabet().render(w),
            (Backend::Transformation { .. }, Element::Map(m)) => {
                let parts: Vec<String> = m.iter().map(|i| i.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            (Backend::Table(t), Element::Index(i)) => t.names[*i].clone(),
            (Backend::Product(a, b), Element::Pair(x, y)) => format!("({},{})", a.render(x), b.render(y)),
            _ => format!("{x:?}"),
        }
    }

    /// Parses a canonical element name (as produced by [`render`](Self::render))
    /// or, for rewriting backends, any word, which is then normalized.
    pub fn parse_element(&self, text: &str) -> Result<Element, MonoidError> {
        let text = text.trim();
        let unknown = || MonoidError::UnknownElement(text.to_string());
        match &self.backend {
            Backend::Rewriting(rs) => {
                let w = rs.alphabet().parse_word(text)?;
                Ok(Element::Word(rs.normalize_unchecked(&w)))
            }
            Backend::Transformation { degree } => {
                let inner = text.trim_start_matches('[').trim_end_matches(']');
                let images: Vec<u32> = inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u32>().map_err(|_| unknown()))
                    .collect::<Result<_, _>>()?;
                let el = Element::Map(images);
                self.check(&el).map_err(|_| unknown())?;
                let _ = degree;
                Ok(el)
            }
            Backend::Table(t) => t.names.iter().position(|n| n == text).map(Element::Index).ok_or_else(unknown),
            Backend::Product(a, b) => {
                let inner = text.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(unknown)?;
                let split = top_level_comma(inner).ok_or_else(unknown)?;
                let x = a.parse_element(&inner[..split])?;
                let y = b.parse_element(&inner[split + 1..])?;
                Ok(Element::pair(x, y))
            }
        }
    }

    /// `(m1, m2)` for product backends.
    pub fn factors(&self) -> Option<(&Monoid, &Monoid)> {
        match &self.backend {
            Backend::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        write!(f, "{} monoid generated by {{{}}}", self.kind(), names.join(", "))
    }
}
