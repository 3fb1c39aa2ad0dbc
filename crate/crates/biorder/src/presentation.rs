//! Presentation files.
