"""
Data models: distributions, environments, experiment configs and results
"""
