"""
Simulation library for risk-aware combinatorial semi-bandits (CVaR objective)
"""
