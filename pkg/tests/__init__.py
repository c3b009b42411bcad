"""
Test suite for the interleaved collaborative decoder.
"""
