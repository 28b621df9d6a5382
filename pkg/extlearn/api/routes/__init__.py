"""ExtLearn API 路由"""
