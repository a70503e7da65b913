"""
Main application package
""" 