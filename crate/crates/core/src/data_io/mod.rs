//! Dataset files, synthetic data, and CSV/SVG result output.

pub mod dataset;
pub mod fronts;
pub mod generate;
pub mod svg;

pub use dataset::{load_dataset, parse_dataset, DatasetFile, RegimeRecord, DATASET_VERSION};
pub use fronts::{front_csv_string, read_front_csv, write_front_csv, CsvFrontRow, FrontRow};
pub use generate::{generate_synthetic, mean_off_diagonal, repair_correlation, GeneratorSpec, RegimeLevel};
pub use svg::{render_svg_scatter, technique_color, write_svg_scatter, Series, PALETTE};
