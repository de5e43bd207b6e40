"""
Process settings, logging setup and the error hierarchy
"""
