"""
Core configuration and settings
""" 