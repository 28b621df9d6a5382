"""ExtLearn HTTP API 层"""
