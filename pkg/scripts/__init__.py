"""Scripts package initialization"""
