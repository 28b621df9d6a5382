"""ExtLearn - 有限基范畴上外延学习器的演算、对偶与 Atemp 语义"""
__version__ = "0.3.0"
