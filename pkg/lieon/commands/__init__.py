"""
Command modules for lieon
"""
