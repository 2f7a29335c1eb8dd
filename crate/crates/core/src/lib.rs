//! Affine cover numbers of graphs.
//!
//! The line cover number ρ¹_d(G) is the least number of lines in ℝᵈ whose
//! union contains a crossing-free straight-line drawing of G; ρ²₃(G) is the
//! analogous quantity for planes in ℝ³. The weak variants π¹₃ and π²₃ only
//! require the vertices to lie on the lines or planes.
//!
//! The crate provides exact certification of drawings ([`geom`]), the
//! polynomial kernel for ρ¹_d ([`kernel`]), templates and their
//! stretchability ([`templates`], [`stretch`]), the FPT decision procedure
//! ([`fpt`]), existential-theory-of-the-reals encodings ([`formula`]), exact
//! weak parameters ([`weak`]) and the hardness gadgets ([`reductions`]).

pub mod formula;
pub mod fpt;
pub mod geom;
pub mod graph;
pub mod kernel;
pub mod reductions;
pub mod scalar;
pub mod stretch;
pub mod templates;
pub mod weak;

pub use fpt::{decide_line_cover, decide_with, Certificate, CoverQuery, Decision, DecideOptions};
pub use geom::{verify_cover, CoverReport, Line, Point, Realization};
pub use graph::{format_graph, parse_graph, Graph, GraphError};
pub use kernel::{kernelize, KernelResult, Verdict};
pub use scalar::Scalar;
pub use stretch::{is_stretchable, StretchAnswer, StretchVerdict};
pub use templates::{enumerate_templates, find_embedding, CombinatorialDescription, TemplateGraph};
pub use weak::{linear_vertex_arboricity, pi13, pi23, vertex_thickness};


