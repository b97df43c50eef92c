"""
Wire formats for lieon: JSON documents and DOT diagrams
"""
