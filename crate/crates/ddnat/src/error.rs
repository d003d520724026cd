use thiserror::Error;

/// Errors shared across the library.
///
/// Universe and domain mismatches are reported eagerly: every operation that
/// combines two values checks that they live over the same universe (or that
/// a map's endpoints line up) before doing any work.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: expected {{{expected}}}, got {{{found}}}")]
    UniverseMismatch { expected: String, found: String },

    #[error("element `{element}` is not in universe {{{universe}}}")]
    ElementOutsideUniverse { element: String, universe: String },

    #[error("map does not cover `{element}`")]
    MissingImage { element: String },

    #[error("map entry `{key} -> {value}` falls outside its domain or codomain")]
    EntryOutsideMap { key: String, value: String },

    #[error("label `{label}` is not in the map's domain")]
    LabelOutsideDomain { label: String },

    #[error("label `{label}` does not appear in the order")]
    LabelOutsideOrder { label: String },

    #[error("duplicate name `{name}` in total order")]
    DuplicateOrderName { name: String },

    #[error("cannot build a vtree over an empty name list")]
    EmptyOrder,

    #[error("a decomposition needs at least one prime-sub pair")]
    EmptyDecomposition,

    #[error("vtree children share the leaf `{name}`")]
    OverlappingVtreeLeaves { name: String },

    #[error("map endpoints do not match the vtree leaf sets: {detail}")]
    EmbeddingMismatch { detail: String },

    #[error("universe of size {size} exceeds the sweep limit of {max} elements")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("the `{restriction}` restriction does not apply to {kind} terms")]
    InvalidRestriction { restriction: String, kind: String },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
