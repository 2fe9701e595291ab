"""khabar: content-based Urdu news recommendation.

Cleaning pipeline, TF-IDF and dense-embedding cosine similarity, reading
sessions with thresholded recommendations, and confusion-matrix evaluation.
"""

__version__ = "0.1.0"
