//! Naming conventions: CamelCase words, letters-only names, the entity-name
//! key prefix, and the singular-noun heuristic.

use std::collections::HashSet;

/// Shortest prefix of `entity_name` with at least three letters that no other
/// name in `pool` starts with. Falls back to the whole name when the name is
/// shorter than three letters or is itself a prefix of another pool member.
///
/// Comparison is case-sensitive and character-based; `pool` may contain
/// `entity_name` itself.
pub fn compute_prefix<S: AsRef<str>>(entity_name: &str, pool: &[S]) -> String {
    let chars: Vec<char> = entity_name.chars().collect();
    let others: Vec<&str> = pool
        .iter()
        .map(AsRef::as_ref)
        .filter(|n| *n != entity_name)
        .collect();
    for k in 3..=chars.len() {
        let candidate: String = chars[..k].iter().collect();
        if !others.iter().any(|o| o.starts_with(&candidate)) {
            return candidate;
        }
    }
    entity_name.to_owned()
}

/// Splits a name into words. Anything other than an ASCII letter separates
/// words and is dropped; inside a run of letters a word starts at a
/// lower-to-upper transition, or at the last capital of an upper-case run
/// that is followed by a lower-case letter (`HTTPServer` -> `HTTP`, `Server`).
pub fn split_words(name: &str) -> Vec<String> {
    let mut words = Vec::new();
    for run in name.split(|c: char| !c.is_ascii_alphabetic()) {
        let chars: Vec<char> = run.chars().collect();
        let mut start = 0;
        for i in 1..chars.len() {
            let upper = chars[i].is_ascii_uppercase();
            let prev_lower = chars[i - 1].is_ascii_lowercase();
            let prev_upper = chars[i - 1].is_ascii_uppercase();
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_ascii_lowercase());
            if upper && (prev_lower || (prev_upper && next_lower)) {
                words.push(chars[start..i].iter().collect());
                start = i;
            }
        }
        if start < chars.len() {
            words.push(chars[start..].iter().collect());
        }
    }
    words
}

fn is_camel_run(run: &str) -> bool {
    let bytes = run.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_uppercase() {
        return false;
    }
    let mut i = 0;
    while i < bytes.len() {
        if !bytes[i].is_ascii_uppercase() {
            return false;
        }
        let word_start = i;
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_lowercase() {
            i += 1;
        }
        if i - word_start < 2 {
            return false;
        }
    }
    true
}

/// Every word is one capital followed by one or more lower-case letters.
/// Non-letter characters are judged by other rules and only split words here.
pub fn has_camel_case_words(name: &str) -> bool {
    let runs: Vec<&str> = name
        .split(|c: char| !c.is_ascii_alphabetic())
        .filter(|r| !r.is_empty())
        .collect();
    !runs.is_empty() && runs.iter().all(|r| is_camel_run(r))
}

pub fn has_whitespace(name: &str) -> bool {
    name.chars().any(char::is_whitespace)
}

/// Characters other than ASCII letters and whitespace.
pub fn has_forbidden_symbols(name: &str) -> bool {
    name.chars()
        .any(|c| !c.is_ascii_alphabetic() && !c.is_whitespace())
}

/// Letters only, CamelCase.
pub fn is_conforming_name(name: &str) -> bool {
    name.chars().all(|c| c.is_ascii_alphabetic()) && is_camel_run(name)
}

/// Case- and symbol-insensitive identity used to spot names that differ only
/// in spelling conventions.
pub fn canonical_key(name: &str) -> String {
    name.chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Rewrites a name into conforming CamelCase: split into words (dropping
/// symbols, digits and spaces), re-case each word, concatenate. A one-letter
/// word is merged into its neighbour. Returns `None` when fewer than two
/// letters remain.
pub fn normalize_name(name: &str) -> Option<String> {
    let mut words: Vec<String> = split_words(name)
        .into_iter()
        .map(|w| w.to_ascii_lowercase())
        .collect();
    if words.iter().map(String::len).sum::<usize>() < 2 {
        return None;
    }
    while let Some(i) = words.iter().position(|w| w.len() == 1) {
        let single = words.remove(i);
        if i < words.len() {
            words[i].insert_str(0, &single);
        } else {
            words[i - 1].push_str(&single);
        }
    }
    Some(words.iter().map(|w| capitalize(w)).collect())
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_ascii_uppercase().to_string() + chars.as_str(),
        None => String::new(),
    }
}

const DEFAULT_PLURAL_EXCEPTIONS: &str = include_str!("../data/plural_exceptions.txt");

/// Singular nouns that end in `s`. Matching is case-insensitive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluralExceptions {
    words: HashSet<String>,
}

impl PluralExceptions {
    /// One word per line; blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(str::to_ascii_lowercase)
            .collect();
        PluralExceptions { words }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_ascii_lowercase())
    }
}

impl Default for PluralExceptions {
    fn default() -> Self {
        PluralExceptions::from_text(DEFAULT_PLURAL_EXCEPTIONS)
    }
}

/// True when the final word of the name looks like a plural noun. The name is
/// judged in its normalized spelling, so renaming by the fixer never changes
/// the verdict.
pub fn is_suspected_plural(name: &str, exceptions: &PluralExceptions) -> bool {
    let normalized = normalize_name(name);
    match split_words(normalized.as_deref().unwrap_or(name)).last() {
        Some(word) => {
            let lower = word.to_ascii_lowercase();
            lower.ends_with('s') && !exceptions.contains(&lower)
        }
        None => false,
    }
}
