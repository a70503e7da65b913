"""
Enums package for application constants
""" 