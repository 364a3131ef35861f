"""Command-line front end and the text file formats it reads and writes."""
