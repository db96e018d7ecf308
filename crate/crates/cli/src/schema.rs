//! JSON Schema of the manifest format, printed by `dzk schema`.

pub const MANIFEST_SCHEMA: &str = r##"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "dzk manifest",
  "type": "object",
  "additionalProperties": false,
  "required": ["experiment", "params", "seed", "output_dir"],
  "properties": {
    "experiment": {
      "enum": ["evolve", "strichartz", "vdc", "kernel_h", "poisson", "kato_ponce", "cont_dep", "energy_check"]
    },
    "run_id": {
      "type": "string",
      "pattern": "^[A-Za-z0-9_.-]+$",
      "description": "Prefix of every output file; defaults to the manifest file stem."
    },
    "params": {
      "type": "object",
      "additionalProperties": false,
      "required": ["alpha", "beta", "sign"],
      "properties": {
        "alpha": { "type": "number", "exclusiveMinimum": -1 },
        "beta": { "type": "number", "minimum": 1 },
        "sign": { "enum": [1, -1] }
      }
    },
    "grid": {
      "description": "Required by evolve, strichartz, kato_ponce, cont_dep and energy_check.",
      "type": "object",
      "additionalProperties": false,
      "required": ["nx", "ny", "lx"],
      "properties": {
        "nx": { "type": "integer", "minimum": 4, "description": "power of two" },
        "ny": { "type": "integer", "minimum": 4, "description": "power of two" },
        "lx": {
          "oneOf": [
            { "type": "number", "exclusiveMinimum": 0 },
            { "type": "string", "pattern": "^\\s*([0-9.eE+-]+)?\\s*(pi|π)$" }
          ]
        }
      }
    },
    "solver": {
      "description": "Only for evolve, cont_dep and energy_check; absent fields take defaults.",
      "type": "object",
      "additionalProperties": false,
      "properties": {
        "dt": { "type": "number", "exclusiveMinimum": 0, "default": 0.001 },
        "t_final": { "type": "number", "exclusiveMinimum": 0, "default": 1.0 },
        "dealias": { "type": "number", "exclusiveMinimum": 0, "maximum": 1, "default": 0.6666666666666666 },
        "cfl_safety": { "type": "number", "exclusiveMinimum": 0, "maximum": 1, "default": 0.5 },
        "snapshot_stride": { "type": "integer", "minimum": 1, "default": 10 },
        "nonlinear": { "type": "boolean", "default": true },
        "boundary_tolerance": { "type": ["number", "null"], "exclusiveMinimum": 0, "default": 1e-8 }
      }
    },
    "seed": { "type": "integer", "minimum": 0 },
    "output_dir": { "type": "string", "description": "Relative paths resolve against the manifest's directory." },
    "options": {
      "description": "Experiment-specific; unknown keys are rejected. Defaults in parentheses.",
      "type": "object",
      "properties": {
        "evolve": { "const": "data {amplitude 0.5, width_x 6, kappa_y 2, center_x 40}, snapshots (true), mass_tolerance (1e-8), energy_tolerance (1e-6)" },
        "strichartz": { "const": "k_values ([0]), j_values ([4..8]), data (flat | random_phase), intervals_per_level (8), extra_levels (3), min_samples (128), oversample (2)" },
        "vdc": { "const": "j_values ([4..7]), l_span (6), alphas ([params.alpha]), x_samples (256)" },
        "kernel_h": { "const": "betas ([params.beta]), eta_min (-50), eta_max (50), eta_step (0.5)" },
        "poisson": { "const": "scales ([1, 10]), m_max (200)" },
        "kato_ponce": { "const": "pairs (100), s_values ([1, 2, 2.5]), terms (3), max_n (3), max_change (0.1)" },
        "cont_dep": { "const": "s (2), deltas ([0, 1e-2, 5e-3, 2.5e-3]), data (as evolve)" },
        "energy_check": { "const": "s (2), data (as evolve), bound (10)" }
      }
    }
  }
}
"##;
