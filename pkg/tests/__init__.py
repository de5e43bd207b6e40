"""
Tests for the CVaR bandit simulator
"""
