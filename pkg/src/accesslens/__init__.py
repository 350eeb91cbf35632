"""Indoor-scene inaccessibility detection, evaluation, and augmentation suggestions."""

__version__ = "0.1.0"
