use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// An interned letter of the alphabet.
///
/// Names live in a process-wide, append-only table, so a `Symbol` is a
/// `Copy` handle. Ordering is lexicographic on the name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(&'static str);

fn table() -> &'static Mutex<HashSet<&'static str>> {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Symbol {
    /// Interns `name`. Panics if `name` is not an identifier; use
    /// [`Symbol::parse`] for untrusted input.
    pub fn new(name: &str) -> Symbol {
        Symbol::parse(name).unwrap_or_else(|| panic!("invalid symbol name {name:?}"))
    }

    pub fn parse(name: &str) -> Option<Symbol> {
        if !is_identifier(name) {
            return None;
        }
        let mut table = table().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&interned) = table.get(name) {
            return Some(Symbol(interned));
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.insert(leaked);
        Some(Symbol(leaked))
    }

    pub fn name(self) -> &'static str {
        self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self.0)
    }
}
