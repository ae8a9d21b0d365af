"""Services package initialization"""
from services.convolution import ConvolutionVerifier
from services.corpus import CorpusRunner, default_corpus

__all__ = ['ConvolutionVerifier', 'CorpusRunner', 'default_corpus']
