//! Stress recovery, error norms and field export.
//!
//! Hybrid meshes evaluate the membrane stress on the M1 facets and the
//! bending couple on the NURBS surface. [`Evaluator::recover_raw`] samples
//! both on a grid per NURBS element, [`Evaluator::recover_interpolated`]
//! interpolates element-corner values, and [`Evaluator::recover_constant`]
//! reports one value per M1 element.

pub mod export;
pub mod norms;
pub mod projection;
pub mod recovery;

pub use export::{export, parse_csv, to_csv, to_vtk, CsvRow, ExportOptions, Format, CSV_HEADER};
pub use norms::{error_norms, max_value_error, ErrorReport, ReferenceField};
pub use projection::{project_normal, project_with_frame, M1Point};
pub use recovery::{local_grid, B2Point, CornerFields, Evaluator, FieldSample, Quantity, Surface};
