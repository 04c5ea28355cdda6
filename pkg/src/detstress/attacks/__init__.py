"""Attack implementations, grouped by pipeline stage: edit and para operate
post-generation, prompt pre-generation, cogen inside the decoding loop."""
