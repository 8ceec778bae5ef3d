"""Self-similar groupoid actions on graphs: word problems, germs, finite
groupoid homology and the K-theory and homology pipelines."""

__version__ = "0.1.0"
