"""
Utility modules for lieon
"""
