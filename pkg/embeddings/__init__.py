"""
Embeddings module for corpus sampling
"""

from .lsa_embedder import EmbeddingMatrix, LsaEmbedder, TermMatrix, tfidf, tokenize, truncated_svd

__all__ = ["EmbeddingMatrix", "LsaEmbedder", "TermMatrix", "tfidf", "tokenize", "truncated_svd"]
